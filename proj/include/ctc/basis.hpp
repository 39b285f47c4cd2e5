#pragma once

#include <string>
#include <vector>

#include "ctc/scenario.hpp"

namespace ctc {

/// Coordinate system for points and inequalities. The probability basis is
/// the raw behavior vector; correlator bases apply a rational functional
/// matrix (rows) to behaviors.
struct Basis {
  std::string id = "probability";
  std::vector<std::string> labels; // one per functional row (empty for probability)
  RatMat functionals;              // k x behavior_length (0x0 for probability)

  bool is_probability() const { return id == "probability"; }
  Index dim(const Scenario& s) const {
    return is_probability() ? s.behavior_length() : functionals.rows();
  }
  friend bool operator==(const Basis&, const Basis&) = default;
};

/// <A_x B_y> = sum (-1)^(a+b) p(a,b|x,y) over the first two steps, any
/// further settings averaged. Labels "AB_x,y", lexicographic.
Basis ab_correlator_basis(const Scenario& s);

/// <B_x,y> = sum (-1)^b p(b|x,y): Bob's marginal correlators. Labels "B_x,y".
Basis b_marginal_basis(const Scenario& s);

/// Three-step basis of the 4 <AB_x,y> (third setting averaged) followed by
/// the 8 <BC_x,y,z>. Labels "AB_x,y" then "BC_x,y,z".
Basis ab_bc_correlator_basis(const Scenario& s);

Basis probability_basis();

/// Builds one of the named bases above from its id string.
Basis basis_from_id(const std::string& id, const Scenario& s);

RatVec project_point(const RatVec& probability_point, const Basis& basis);
Vec project_point(const Vec& probability_point, const Basis& basis);
Vec project_behavior(const BehaviorF& b, const Basis& basis);

} // namespace ctc
