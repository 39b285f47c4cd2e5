#pragma once

#include <vector>

#include "ctc/inequality.hpp"
#include "ctc/model.hpp"

namespace ctc {

/// Signed coordinate permutation: coordinate i maps to perm[i] and picks up
/// sign[i]. Applied to inequalities as coeffs'[perm[i]] = sign[i] * coeffs[i].
struct SignedPermutation {
  std::vector<Index> perm;
  std::vector<int> sign;

  void validate(Index dim) const;
  Inequality apply(const Inequality& in) const;
  RatVec apply(const RatVec& v) const;
};

/// Relabeling generators (input permutations per step, output permutations per
/// step and setting, optional party exchange for shape-symmetric two-step
/// scenarios) lifted onto the given basis. Lifting fails with
/// std::invalid_argument if a relabeling does not act on the basis by a signed
/// permutation.
std::vector<SignedPermutation> relabeling_generators(const Scenario& s, const Basis& basis,
                                                     bool party_exchange = false);

struct SymmetryClasses {
  std::vector<std::vector<size_t>> classes; // indices into the input list
  std::vector<Inequality> representatives;  // lexicographically smallest orbit member
};

/// Partitions inequalities into orbits under the generated group. Images are
/// compared modulo `equalities` (needed on non-full-dimensional polytopes).
/// Throws if an orbit leaves the input set.
SymmetryClasses symmetry_classes(const std::vector<Inequality>& inequalities,
                                 const std::vector<SignedPermutation>& generators,
                                 const std::vector<Inequality>& equalities = {});

/// Canonical orbit representative of one inequality (no containment check).
Inequality orbit_representative(const Inequality& in,
                                const std::vector<SignedPermutation>& generators,
                                const std::vector<Inequality>& equalities = {});

} // namespace ctc
