#pragma once

#include <vector>

#include "ctc/basis.hpp"
#include "ctc/rational.hpp"

namespace ctc {

/// Linear inequality coeffs . x <= bound (or equality when is_equality).
/// Canonical form: integer entries with gcd(coeffs, bound) = 1; inequalities
/// keep their orientation (only positive rescaling), equalities flip sign so
/// the first nonzero coefficient is positive.
struct Inequality {
  RatVec coeffs;
  Rational bound = 0;
  bool is_equality = false;

  friend bool operator==(const Inequality& a, const Inequality& b) {
    return a.is_equality == b.is_equality && a.bound == b.bound && a.coeffs.size() == b.coeffs.size() &&
           a.coeffs == b.coeffs;
  }
};

bool lex_less(const Inequality& a, const Inequality& b);

/// Clears denominators, divides by the gcd; idempotent. Throws on the all-zero
/// functional (zero coeffs and zero bound).
Inequality canonicalize(const Inequality& in);

/// Canonical representative of `in` modulo the span of `equalities`
/// (each treated as the vector (-bound, coeffs...)); then canonicalize().
Inequality reduce_mod_equalities(const Inequality& in, const std::vector<Inequality>& equalities);

double evaluate(const Inequality& in, const Vec& point);
Rational evaluate(const Inequality& in, const RatVec& point);

/// coeffs . point - bound (positive = violated for a <= inequality).
double violation(const Inequality& in, const Vec& point);

} // namespace ctc
