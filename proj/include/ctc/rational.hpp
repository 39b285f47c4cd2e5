#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ctc/types.hpp"

namespace ctc {

/// Serializes a rational as "p/q" in lowest terms (cpp_rational keeps them reduced).
std::string to_fraction_string(const Rational& r);

/// Parses "p/q" or a plain integer "p". Throws std::invalid_argument on garbage.
Rational parse_rational(const std::string& s);

/// Nearest rational with |x - p/q| <= eps via continued-fraction expansion.
Rational rationalize(double x, double eps = 1e-12);

double to_double(const Rational& r);

/// Scales a rational vector to a primitive integer vector (gcd of entries 1),
/// preserving sign. The zero vector stays zero.
RatVec primitive_integer(const RatVec& v);

/// Reduced row echelon form in place; returns pivot column indices.
std::vector<Index> rref(RatMat& m);

/// Eliminates the pivot coordinates of `v` against RREF rows (same column count).
RatVec reduce_against(const RatVec& v, const RatMat& rrefRows, const std::vector<Index>& pivots);

} // namespace ctc
