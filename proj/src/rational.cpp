#include "ctc/rational.hpp"

#include <boost/multiprecision/integer.hpp>
#include <ostream>

#include <cmath>
#include <limits>

namespace ctc {

std::string to_fraction_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational: '" + s + "'");
  }
}

Rational rationalize(double x, double eps) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot rationalize non-finite value");
  bool neg = x < 0;
  double t = std::fabs(x);
  // continued fraction convergents p/q of t
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = t;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(frac);
    if (fl > 9.0e18) break;
    BigInt a(static_cast<long long>(fl));
    BigInt p2 = a * p1 + p0;
    BigInt q2 = a * q1 + q0;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    Rational approx(p1, q1);
    if (std::fabs(to_double(approx) - t) <= eps) break;
    double rem = frac - fl;
    if (rem < 1e-18) break;
    frac = 1.0 / rem;
  }
  Rational r(p1, q1);
  return neg ? -r : r;
}

double to_double(const Rational& r) {
  if (r.is_zero()) return 0.0;
  BigInt n = numerator(r), d = denominator(r);
  // keep both parts within double range; equal shifts preserve the ratio
  const long nb = static_cast<long>(boost::multiprecision::msb(abs(n)));
  const long db = static_cast<long>(boost::multiprecision::msb(d));
  long shift = std::max({0L, nb - 960, db - 960});
  if (shift > 0) {
    n >>= shift;
    d >>= shift;
    if (d == 0) d = 1;
  }
  return n.convert_to<double>() / d.convert_to<double>();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  os << numerator(r).str();
  if (!r.is_integer()) os << "/" << denominator(r).str();
  return os;
}

RatVec primitive_integer(const RatVec& v) {
  BigInt den_lcm = 1;
  for (Index i = 0; i < v.size(); ++i)
    den_lcm = boost::multiprecision::lcm(den_lcm, denominator(v[i]));
  BigInt num_gcd = 0;
  std::vector<BigInt> ints(static_cast<size_t>(v.size()));
  for (Index i = 0; i < v.size(); ++i) {
    ints[static_cast<size_t>(i)] = numerator(v[i]) * (den_lcm / denominator(v[i]));
    num_gcd = boost::multiprecision::gcd(num_gcd, abs(ints[static_cast<size_t>(i)]));
  }
  RatVec out(v.size());
  if (num_gcd == 0) { out.setZero(); return out; }
  for (Index i = 0; i < v.size(); ++i) out[i] = Rational(ints[static_cast<size_t>(i)] / num_gcd);
  return out;
}

std::vector<Index> rref(RatMat& m) {
  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index piv = -1;
    for (Index i = row; i < m.rows(); ++i)
      if (m(i, col) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != row) m.row(piv).swap(m.row(row));
    Rational inv = m(row, col);
    for (Index j = col; j < m.cols(); ++j) m(row, j) /= inv;
    for (Index i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      Rational f = m(i, col);
      for (Index j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  m.conservativeResize(row, m.cols());
  return pivots;
}

RatVec reduce_against(const RatVec& v, const RatMat& rrefRows, const std::vector<Index>& pivots) {
  RatVec out = v;
  for (Index r = 0; r < rrefRows.rows(); ++r) {
    const Index c = pivots[static_cast<size_t>(r)];
    if (out[c] == 0) continue;
    Rational f = out[c];
    for (Index j = 0; j < out.size(); ++j) out[j] -= f * rrefRows(r, j);
  }
  return out;
}

} // namespace ctc
