#pragma once

#include <complex>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lambdak/rational_fn.hpp"

namespace lambdak {

/// g = e^{2 pi i k / n} with gcd(k, n) = 1 and 0 <= k < n.
struct RootOfUnity {
  long n = 1;
  long k = 0;

  /// Reduces k mod n and divides out gcd(k, n).
  static RootOfUnity make(long n, long k);
  /// Parses "n/k" (the CLI spelling of e^{2 pi i k/n}).
  static RootOfUnity parse(const std::string& text);
  long double t() const { return static_cast<long double>(k) / static_cast<long double>(n); }
  std::string to_string() const { return std::to_string(n) + "/" + std::to_string(k); }
  friend auto operator<=>(const RootOfUnity&, const RootOfUnity&) = default;
};

/// g = e^{2 pi i t} with e^{2 pi i t} transcendental.
struct GenericPoint {
  friend bool operator==(const GenericPoint&, const GenericPoint&) = default;
};

using CirclePoint = std::variant<RootOfUnity, GenericPoint>;

std::string to_string(const CirclePoint& pt);

/// Element of Q(zeta_n) in the power basis 1, x, ..., x^{phi(n)-1} with
/// x = e^{2 pi i / n}, reduced modulo the n-th cyclotomic polynomial.
class CyclotomicValue {
 public:
  CyclotomicValue() = default;
  CyclotomicValue(long n, const Rational& value);
  /// x^power in Q(zeta_n).
  static CyclotomicValue root_power(long n, long power);

  long order() const { return n_; }
  const poly::QPoly& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_rational() const { return coeffs_.size() <= 1; }
  Rational rational_value() const;

  CyclotomicValue& operator+=(const CyclotomicValue& o);
  CyclotomicValue& operator-=(const CyclotomicValue& o);
  CyclotomicValue& operator*=(const CyclotomicValue& o);
  friend CyclotomicValue operator+(CyclotomicValue a, const CyclotomicValue& b) { return a += b; }
  friend CyclotomicValue operator-(CyclotomicValue a, const CyclotomicValue& b) { return a -= b; }
  friend CyclotomicValue operator*(CyclotomicValue a, const CyclotomicValue& b) { return a *= b; }
  friend bool operator==(const CyclotomicValue& a, const CyclotomicValue& b) {
    return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
  }
  CyclotomicValue inverse() const;

  std::complex<long double> to_complex() const;
  std::string to_string() const;

 private:
  CyclotomicValue(long n, poly::QPoly coeffs);
  void check_same_field(const CyclotomicValue& o) const;

  long n_ = 1;
  poly::QPoly coeffs_;
};

/// True iff p(g) = 0 at the point. At a root of unity g = e^{2 pi i k/n} the
/// half power is q = e^{pi i k/n}; the test is divisibility by a cyclotomic
/// polynomial, no floating point involved. At a generic point p vanishes iff
/// it is the zero polynomial.
bool vanishes_at(const HalfLaurent& p, const CirclePoint& pt);

/// Exact value at a root of unity; throws PreconditionError at a pole.
/// Integral functions land in Q(zeta_n), others in Q(zeta_{2n}).
CyclotomicValue evaluate_exact(const RationalFn& f, const RootOfUnity& pt);
CyclotomicValue evaluate_exact(const HalfLaurent& p, const RootOfUnity& pt);

/// Finite set of roots of unity where fixed-point data degenerates.
class ExclusionSet {
 public:
  ExclusionSet() = default;
  /// Adds every g with g^m = 1.
  void add_order_divisors(long m);
  void add(const RootOfUnity& pt) { points_.insert(pt); }

  bool contains(const CirclePoint& pt) const;
  /// True iff every primitive n-th root of unity is in the set.
  bool contains_all_primitive(long n) const;
  /// Largest order appearing in the set (0 when empty).
  long max_order() const;
  const std::set<RootOfUnity>& points() const { return points_; }

 private:
  std::set<RootOfUnity> points_;
};

long euler_phi(long n);

}  // namespace lambdak
