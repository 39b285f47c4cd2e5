#include "ctc/inequality.hpp"

#include <stdexcept>

namespace ctc {

bool lex_less(const Inequality& a, const Inequality& b) {
  if (a.is_equality != b.is_equality) return a.is_equality && !b.is_equality;
  const Index n = std::min(a.coeffs.size(), b.coeffs.size());
  for (Index i = 0; i < n; ++i) {
    if (a.coeffs[i] < b.coeffs[i]) return true;
    if (b.coeffs[i] < a.coeffs[i]) return false;
  }
  if (a.coeffs.size() != b.coeffs.size()) return a.coeffs.size() < b.coeffs.size();
  return a.bound < b.bound;
}

Inequality canonicalize(const Inequality& in) {
  RatVec v(in.coeffs.size() + 1);
  v[0] = in.bound;
  v.tail(in.coeffs.size()) = in.coeffs;
  RatVec prim = primitive_integer(v);
  bool all_zero = true;
  for (Index i = 0; i < prim.size(); ++i)
    if (prim[i] != 0) { all_zero = false; break; }
  if (all_zero) throw std::invalid_argument("cannot canonicalize the all-zero functional");

  Inequality out{prim.tail(in.coeffs.size()), prim[0], in.is_equality};
  if (in.is_equality) {
    for (Index i = 0; i < out.coeffs.size(); ++i) {
      if (out.coeffs[i] == 0) continue;
      if (out.coeffs[i] < 0) {
        out.coeffs = -out.coeffs;
        out.bound = -out.bound;
      }
      break;
    }
  }
  return out;
}

namespace {

RatVec stacked(const Inequality& in) {
  RatVec v(in.coeffs.size() + 1);
  v[0] = in.bound;
  v.tail(in.coeffs.size()) = in.coeffs;
  return v;
}

} // namespace

Inequality reduce_mod_equalities(const Inequality& in, const std::vector<Inequality>& equalities) {
  if (equalities.empty()) return canonicalize(in);
  RatMat rows(static_cast<Index>(equalities.size()), in.coeffs.size() + 1);
  for (size_t i = 0; i < equalities.size(); ++i) {
    if (equalities[i].coeffs.size() != in.coeffs.size())
      throw std::invalid_argument("equality dimension mismatch");
    rows.row(static_cast<Index>(i)) = stacked(equalities[i]).transpose();
  }
  auto pivots = rref(rows);
  RatVec reduced = reduce_against(stacked(in), rows, pivots);
  Inequality out{reduced.tail(in.coeffs.size()), reduced[0], in.is_equality};
  return canonicalize(out);
}

double evaluate(const Inequality& in, const Vec& point) {
  if (in.coeffs.size() != point.size()) throw std::invalid_argument("dimension mismatch");
  double s = 0.0;
  for (Index i = 0; i < point.size(); ++i)
    if (in.coeffs[i] != 0) s += to_double(in.coeffs[i]) * point[i];
  return s;
}

Rational evaluate(const Inequality& in, const RatVec& point) {
  if (in.coeffs.size() != point.size()) throw std::invalid_argument("dimension mismatch");
  Rational s = 0;
  for (Index i = 0; i < point.size(); ++i) s += in.coeffs[i] * point[i];
  return s;
}

double violation(const Inequality& in, const Vec& point) {
  return evaluate(in, point) - to_double(in.bound);
}

} // namespace ctc
