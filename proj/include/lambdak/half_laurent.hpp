#pragma once

#include <complex>
#include <string>
#include <vector>

#include "lambdak/numeric.hpp"
#include "lambdak/poly.hpp"

namespace lambdak {

/// Laurent polynomial in q with integer coefficients, where g = q^2.
///
/// Half-integer powers of g are odd powers of q. Stored densely as
/// q^low * (c_0 + c_1 q + ...) with c_0 and the last coefficient nonzero,
/// so every value has exactly one representation.
class HalfLaurent {
 public:
  HalfLaurent() = default;
  HalfLaurent(long constant);  // NOLINT(google-explicit-constructor)
  HalfLaurent(const Integer& constant);  // NOLINT(google-explicit-constructor)

  /// c * q^exp
  static HalfLaurent q_monomial(long q_exp, const Integer& coeff = 1);
  /// c * g^exp
  static HalfLaurent g_monomial(long g_exp, const Integer& coeff = 1);
  /// q^low * (coeffs[0] + coeffs[1] q + ...)
  static HalfLaurent from_q_coeffs(long low, poly::ZPoly coeffs);
  /// Ascending coefficients in g starting at g^low.
  static HalfLaurent from_g_coeffs(long low, const std::vector<Integer>& coeffs);

  bool is_zero() const { return coeffs_.empty(); }
  /// True iff every exponent is even in q, i.e. a Laurent polynomial in g.
  bool is_integral() const;
  bool is_constant() const { return coeffs_.empty() || (coeffs_.size() == 1 && low_ == 0); }

  long low_q() const { return low_; }
  long high_q() const { return low_ + static_cast<long>(coeffs_.size()) - 1; }
  /// Coefficient of q^exp.
  Integer coeff_q(long q_exp) const;
  const poly::ZPoly& q_coeffs() const { return coeffs_; }
  /// Constant term; zero when absent.
  Integer constant_term() const { return coeff_q(0); }
  Integer leading_coeff() const { return coeffs_.empty() ? Integer(0) : coeffs_.back(); }

  HalfLaurent operator-() const;
  HalfLaurent& operator+=(const HalfLaurent& other);
  HalfLaurent& operator-=(const HalfLaurent& other);
  HalfLaurent& operator*=(const HalfLaurent& other);
  friend HalfLaurent operator+(HalfLaurent a, const HalfLaurent& b) { return a += b; }
  friend HalfLaurent operator-(HalfLaurent a, const HalfLaurent& b) { return a -= b; }
  friend HalfLaurent operator*(HalfLaurent a, const HalfLaurent& b) { return a *= b; }
  friend bool operator==(const HalfLaurent& a, const HalfLaurent& b) {
    return a.low_ == b.low_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const HalfLaurent& a, const HalfLaurent& b) { return !(a == b); }
  /// Total order used for map keys; not compatible with arithmetic.
  friend bool operator<(const HalfLaurent& a, const HalfLaurent& b);

  /// Non-negative powers always; negative powers only for units +-q^k.
  HalfLaurent pow(long exp) const;
  bool is_unit() const;
  /// Multiply by q^shift.
  HalfLaurent shift_q(long shift) const;
  /// Substitutes q -> q^-1 (g -> g^-1).
  HalfLaurent invert_variable() const;

  std::complex<long double> evaluate_q(std::complex<long double> q) const;
  /// Evaluation at g = e^{2 pi i t}, taking q = e^{pi i t}.
  std::complex<long double> evaluate_at_t(long double t) const;

  /// Ascending powers of g, e.g. "1+g^(1/2)-3g^2"; "0" for zero.
  std::string to_string() const;

 private:
  void normalize();

  long low_ = 0;
  poly::ZPoly coeffs_;
};

/// Formats a g exponent given in q units: 1 -> "g^(1/2)", 2 -> "g", -4 -> "g^-2".
std::string g_power_string(long q_exp);

}  // namespace lambdak
