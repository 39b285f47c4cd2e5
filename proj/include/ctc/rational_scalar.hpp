#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

namespace ctc {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator. Deliberately has only concrete constructors so template
/// metaprogramming (Eigen scalar promotion) stays well-behaved.
class Rational {
public:
  Rational() : num_(0), den_(1) {}
  Rational(int v) : num_(v), den_(1) {}
  Rational(long v) : num_(v), den_(1) {}
  Rational(long long v) : num_(v), den_(1) {}
  Rational(const BigInt& v) : num_(v), den_(1) {}
  Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  Rational& operator+=(const Rational& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    reduce();
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
    reduce();
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    reduce();
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.num_ == 0) throw std::domain_error("rational division by zero");
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_, unchecked()); }
  friend Rational operator+(const Rational& a) { return a; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend Rational abs(const Rational& a) {
    return a.num_ < 0 ? Rational(-a.num_, a.den_, unchecked()) : a;
  }

  friend const BigInt& numerator(const Rational& a) { return a.num_; }
  friend const BigInt& denominator(const Rational& a) { return a.den_; }

private:
  struct unchecked {};
  Rational(BigInt num, BigInt den, unchecked) : num_(std::move(num)), den_(std::move(den)) {}

  void normalize() {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    reduce();
  }
  void reduce() {
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  BigInt num_;
  BigInt den_; // > 0
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

} // namespace ctc

namespace Eigen {

template <>
struct NumTraits<ctc::Rational> : GenericNumTraits<ctc::Rational> {
  using Real = ctc::Rational;
  using NonInteger = ctc::Rational;
  using Nested = ctc::Rational;
  using Literal = long long;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 200,
    MulCost = 160
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

} // namespace Eigen
