#include "ctc/symmetry.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ctc {

void SignedPermutation::validate(Index dim) const {
  if (static_cast<Index>(perm.size()) != dim || static_cast<Index>(sign.size()) != dim)
    throw std::invalid_argument("signed permutation has the wrong dimension");
  std::vector<char> seen(static_cast<size_t>(dim), 0);
  for (Index i = 0; i < dim; ++i) {
    Index p = perm[static_cast<size_t>(i)];
    if (p < 0 || p >= dim || seen[static_cast<size_t>(p)])
      throw std::invalid_argument("not a permutation");
    seen[static_cast<size_t>(p)] = 1;
    if (sign[static_cast<size_t>(i)] != 1 && sign[static_cast<size_t>(i)] != -1)
      throw std::invalid_argument("signs must be +1 or -1");
  }
}

RatVec SignedPermutation::apply(const RatVec& v) const {
  RatVec out = RatVec::Zero(v.size());
  for (Index i = 0; i < v.size(); ++i)
    out[perm[static_cast<size_t>(i)]] = sign[static_cast<size_t>(i)] == 1 ? v[i] : Rational(-v[i]);
  return out;
}

Inequality SignedPermutation::apply(const Inequality& in) const {
  return Inequality{apply(in.coeffs), in.bound, in.is_equality};
}

namespace {

// Index map on behavior coordinates induced by relabeling inputs/outputs.
using CoordMap = std::vector<Index>;

CoordMap coord_map(const Scenario& s,
                   const std::function<void(std::vector<int>&, std::vector<int>&)>& relabel) {
  const Index len = s.behavior_length();
  CoordMap m(static_cast<size_t>(len));
  std::vector<int> in, out;
  for (Index idx = 0; idx < len; ++idx) {
    s.coordinates(idx, in, out);
    std::vector<int> in2 = in, out2 = out;
    relabel(in2, out2);
    m[static_cast<size_t>(idx)] = s.index(in2, out2);
  }
  return m;
}

// Lifts a probability-coordinate relabeling onto a correlator basis: each
// permuted functional row must match another row up to sign.
SignedPermutation lift(const CoordMap& m, const Basis& basis, const Scenario& s) {
  SignedPermutation sp;
  if (basis.is_probability()) {
    sp.perm.assign(m.begin(), m.end());
    sp.sign.assign(m.size(), 1);
    return sp;
  }
  const Index k = basis.functionals.rows();
  std::map<std::vector<std::string>, Index> lookup; // serialized row -> index
  auto serialize = [&](const RatVec& row) {
    std::vector<std::string> key;
    key.reserve(static_cast<size_t>(row.size()));
    for (Index j = 0; j < row.size(); ++j) key.push_back(to_fraction_string(row[j]));
    return key;
  };
  for (Index i = 0; i < k; ++i) lookup[serialize(basis.functionals.row(i).transpose())] = i;

  sp.perm.resize(static_cast<size_t>(k));
  sp.sign.resize(static_cast<size_t>(k));
  for (Index i = 0; i < k; ++i) {
    RatVec moved = RatVec::Zero(basis.functionals.cols());
    for (Index j = 0; j < basis.functionals.cols(); ++j)
      moved[m[static_cast<size_t>(j)]] = basis.functionals(i, j);
    auto it = lookup.find(serialize(moved));
    if (it != lookup.end()) {
      sp.perm[static_cast<size_t>(i)] = it->second;
      sp.sign[static_cast<size_t>(i)] = 1;
      continue;
    }
    it = lookup.find(serialize(RatVec(-moved)));
    if (it != lookup.end()) {
      sp.perm[static_cast<size_t>(i)] = it->second;
      sp.sign[static_cast<size_t>(i)] = -1;
      continue;
    }
    throw std::invalid_argument("relabeling does not act on this basis by a signed permutation");
  }
  sp.validate(k);
  return sp;
}

} // namespace

std::vector<SignedPermutation> relabeling_generators(const Scenario& s, const Basis& basis,
                                                     bool party_exchange) {
  std::vector<SignedPermutation> gens;
  const int n = s.num_steps();

  // input transpositions (v, v+1) per step
  for (int st = 0; st < n; ++st) {
    for (int v = 0; v + 1 < s.steps()[static_cast<size_t>(st)].inputs; ++v) {
      auto m = coord_map(s, [st, v](std::vector<int>& in, std::vector<int>&) {
        if (in[static_cast<size_t>(st)] == v) in[static_cast<size_t>(st)] = v + 1;
        else if (in[static_cast<size_t>(st)] == v + 1) in[static_cast<size_t>(st)] = v;
      });
      gens.push_back(lift(m, basis, s));
    }
  }
  // output transpositions (w, w+1) per step, conditioned on each own setting
  for (int st = 0; st < n; ++st) {
    for (int x = 0; x < s.steps()[static_cast<size_t>(st)].inputs; ++x) {
      for (int w = 0; w + 1 < s.steps()[static_cast<size_t>(st)].outputs; ++w) {
        auto m = coord_map(s, [st, x, w](std::vector<int>& in, std::vector<int>& out) {
          if (in[static_cast<size_t>(st)] != x) return;
          if (out[static_cast<size_t>(st)] == w) out[static_cast<size_t>(st)] = w + 1;
          else if (out[static_cast<size_t>(st)] == w + 1) out[static_cast<size_t>(st)] = w;
        });
        gens.push_back(lift(m, basis, s));
      }
    }
  }
  if (party_exchange) {
    if (n != 2 || !(s.steps()[0] == s.steps()[1]) || !s.messages().empty())
      throw std::invalid_argument("party exchange needs a symmetric two-step scenario");
    auto m = coord_map(s, [](std::vector<int>& in, std::vector<int>& out) {
      std::swap(in[0], in[1]);
      std::swap(out[0], out[1]);
    });
    gens.push_back(lift(m, basis, s));
  }
  return gens;
}

Inequality orbit_representative(const Inequality& in,
                                const std::vector<SignedPermutation>& generators,
                                const std::vector<Inequality>& equalities) {
  auto canon = [&](const Inequality& q) { return reduce_mod_equalities(q, equalities); };
  Inequality start = canon(in);
  auto key = [](const Inequality& q) {
    std::vector<std::string> k;
    k.push_back(to_fraction_string(q.bound));
    for (Index i = 0; i < q.coeffs.size(); ++i) k.push_back(to_fraction_string(q.coeffs[i]));
    return k;
  };
  std::set<std::vector<std::string>> seen{key(start)};
  std::vector<Inequality> frontier{start};
  Inequality best = start;
  while (!frontier.empty()) {
    Inequality cur = frontier.back();
    frontier.pop_back();
    for (const auto& g : generators) {
      Inequality img = canon(g.apply(cur));
      if (seen.insert(key(img)).second) {
        if (lex_less(img, best)) best = img;
        frontier.push_back(img);
      }
    }
  }
  return best;
}

SymmetryClasses symmetry_classes(const std::vector<Inequality>& inequalities,
                                 const std::vector<SignedPermutation>& generators,
                                 const std::vector<Inequality>& equalities) {
  if (!inequalities.empty()) {
    const Index dim = inequalities.front().coeffs.size();
    for (const auto& g : generators) g.validate(dim);
  }
  auto canon = [&](const Inequality& q) { return reduce_mod_equalities(q, equalities); };
  auto key = [](const Inequality& q) {
    std::vector<std::string> k;
    k.push_back(to_fraction_string(q.bound));
    for (Index i = 0; i < q.coeffs.size(); ++i) k.push_back(to_fraction_string(q.coeffs[i]));
    return k;
  };

  std::map<std::vector<std::string>, size_t> index_of;
  std::vector<Inequality> canonical(inequalities.size());
  for (size_t i = 0; i < inequalities.size(); ++i) {
    canonical[i] = canon(inequalities[i]);
    index_of[key(canonical[i])] = i;
  }

  SymmetryClasses out;
  std::vector<char> assigned(inequalities.size(), 0);
  for (size_t i = 0; i < inequalities.size(); ++i) {
    if (assigned[i]) continue;
    std::set<std::vector<std::string>> seen{key(canonical[i])};
    std::vector<Inequality> frontier{canonical[i]};
    std::vector<size_t> members{i};
    Inequality best = canonical[i];
    assigned[i] = 1;
    while (!frontier.empty()) {
      Inequality cur = frontier.back();
      frontier.pop_back();
      for (const auto& g : generators) {
        Inequality img = canon(g.apply(cur));
        auto k = key(img);
        if (!seen.insert(k).second) continue;
        auto it = index_of.find(k);
        if (it == index_of.end())
          throw std::invalid_argument(
              "orbit leaves the inequality set; generators are not symmetries of it");
        if (!assigned[it->second]) {
          assigned[it->second] = 1;
          members.push_back(it->second);
        }
        if (lex_less(img, best)) best = img;
        frontier.push_back(img);
      }
    }
    std::sort(members.begin(), members.end());
    out.classes.push_back(std::move(members));
    out.representatives.push_back(std::move(best));
  }
  return out;
}

} // namespace ctc
