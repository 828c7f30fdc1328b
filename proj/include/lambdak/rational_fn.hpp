#pragma once

#include <complex>
#include <string>

#include "lambdak/half_laurent.hpp"

namespace lambdak {

/// Quotient of two HalfLaurent values, kept in a unique reduced form.
///
/// Canonical form: gcd(num, den) is a unit of Z[q, q^-1]; the integer
/// content is shared by neither side; den is a polynomial in q with nonzero
/// constant term and positive leading coefficient. Equality is therefore
/// structural.
class RationalFn {
 public:
  RationalFn() : den_(1) {}
  RationalFn(long constant) : num_(constant), den_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFn(const Integer& constant) : num_(constant), den_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFn(const Rational& constant);  // NOLINT(google-explicit-constructor)
  RationalFn(const HalfLaurent& p) : num_(p), den_(1) {}  // NOLINT(google-explicit-constructor)
  /// Throws on a zero denominator.
  RationalFn(const HalfLaurent& num, const HalfLaurent& den);

  const HalfLaurent& num() const { return num_; }
  const HalfLaurent& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == HalfLaurent(1) && den_ == HalfLaurent(1); }
  /// Denominator is 1: the value lies in Z[q, q^-1].
  bool is_laurent() const { return den_ == HalfLaurent(1); }
  /// Numerator and denominator both integral in g.
  bool is_integral() const { return num_.is_integral() && den_.is_integral(); }
  /// The value is a rational constant.
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const;

  RationalFn operator-() const;
  RationalFn& operator+=(const RationalFn& o);
  RationalFn& operator-=(const RationalFn& o);
  RationalFn& operator*=(const RationalFn& o);
  RationalFn& operator/=(const RationalFn& o);
  friend RationalFn operator+(RationalFn a, const RationalFn& b) { return a += b; }
  friend RationalFn operator-(RationalFn a, const RationalFn& b) { return a -= b; }
  friend RationalFn operator*(RationalFn a, const RationalFn& b) { return a *= b; }
  friend RationalFn operator/(RationalFn a, const RationalFn& b) { return a /= b; }
  friend bool operator==(const RationalFn& a, const RationalFn& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RationalFn& a, const RationalFn& b) { return !(a == b); }
  /// Cross-multiplication test, independent of the canonical form.
  static bool cross_equal(const RationalFn& a, const RationalFn& b);

  RationalFn inverse() const;
  RationalFn pow(long exp) const;

  std::complex<long double> evaluate_q(std::complex<long double> q) const;
  std::complex<long double> evaluate_at_t(long double t) const;

  /// "num" or "(num)/(den)" in ascending powers; the printed denominator has
  /// a positive lowest coefficient.
  std::string to_string() const;

 private:
  struct Unchecked {};
  RationalFn(HalfLaurent num, HalfLaurent den, Unchecked) : num_(std::move(num)), den_(std::move(den)) {}
  void normalize();

  HalfLaurent num_;
  HalfLaurent den_;
};

}  // namespace lambdak
