#include "lambdak/circle_point.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace lambdak {

RootOfUnity RootOfUnity::make(long n, long k) {
  if (n < 1) throw InputError("root of unity order must be positive");
  k %= n;
  if (k < 0) k += n;
  long d = std::gcd(k, n);
  if (k == 0) return RootOfUnity{1, 0};
  return RootOfUnity{n / d, k / d};
}

RootOfUnity RootOfUnity::parse(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) throw InputError("expected n/k, got '" + text + "'");
  try {
    std::size_t used_n = 0, used_k = 0;
    long n = std::stol(text.substr(0, slash), &used_n);
    long k = std::stol(text.substr(slash + 1), &used_k);
    if (used_n != slash || used_k != text.size() - slash - 1) throw InputError("bad point");
    return make(n, k);
  } catch (const std::logic_error&) {
    throw InputError("expected n/k, got '" + text + "'");
  }
}

std::string to_string(const CirclePoint& pt) {
  if (const auto* r = std::get_if<RootOfUnity>(&pt)) return "exp(2 pi i " + std::to_string(r->k) + "/" + std::to_string(r->n) + ")";
  return "generic";
}

long euler_phi(long n) {
  long result = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

// ---------------------------------------------------------------------------

CyclotomicValue::CyclotomicValue(long n, const Rational& value) : n_(n) {
  if (value != 0) coeffs_.push_back(value);
}

CyclotomicValue::CyclotomicValue(long n, poly::QPoly coeffs) : n_(n), coeffs_(std::move(coeffs)) {
  coeffs_ = poly::mod(coeffs_, poly::to_q(poly::cyclotomic(n_)));
}

CyclotomicValue CyclotomicValue::root_power(long n, long power) {
  power %= n;
  if (power < 0) power += n;
  poly::QPoly c(power + 1, Rational(0));
  c[power] = 1;
  return CyclotomicValue(n, std::move(c));
}

Rational CyclotomicValue::rational_value() const {
  if (!is_rational()) throw Error("cyclotomic value is not rational");
  return coeffs_.empty() ? Rational(0) : coeffs_[0];
}

void CyclotomicValue::check_same_field(const CyclotomicValue& o) const {
  if (n_ != o.n_) throw Error("cyclotomic values from different fields");
}

CyclotomicValue& CyclotomicValue::operator+=(const CyclotomicValue& o) {
  check_same_field(o);
  coeffs_ = poly::add(coeffs_, o.coeffs_);
  return *this;
}

CyclotomicValue& CyclotomicValue::operator-=(const CyclotomicValue& o) {
  check_same_field(o);
  coeffs_ = poly::sub(coeffs_, o.coeffs_);
  return *this;
}

CyclotomicValue& CyclotomicValue::operator*=(const CyclotomicValue& o) {
  check_same_field(o);
  coeffs_ = poly::mod(poly::mul(coeffs_, o.coeffs_), poly::to_q(poly::cyclotomic(n_)));
  return *this;
}

CyclotomicValue CyclotomicValue::inverse() const {
  if (is_zero()) throw PreconditionError("division by zero in cyclotomic field");
  return CyclotomicValue(n_, poly::inverse_mod(coeffs_, poly::to_q(poly::cyclotomic(n_))));
}

std::complex<long double> CyclotomicValue::to_complex() const {
  const long double two_pi = 2 * std::numbers::pi_v<long double>;
  std::complex<long double> acc = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    long double angle = two_pi * static_cast<long double>(i) / static_cast<long double>(n_);
    acc += static_cast<long double>(coeffs_[i].get_d()) * std::complex<long double>(std::cos(angle), std::sin(angle));
  }
  return acc;
}

std::string CyclotomicValue::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    Rational mag = abs(coeffs_[i]);
    if (coeffs_[i] < 0) out << "-";
    else if (!first) out << "+";
    if (i == 0) out << mag.get_str();
    else {
      if (mag != 1) out << mag.get_str() << "*";
      out << "z" << n_;
      if (i > 1) out << "^" << i;
    }
    first = false;
  }
  return out.str();
}

// ---------------------------------------------------------------------------

bool vanishes_at(const HalfLaurent& p, const CirclePoint& pt) {
  if (p.is_zero()) return true;
  const auto* root = std::get_if<RootOfUnity>(&pt);
  if (root == nullptr) return false;
  if (p.is_integral()) {
    // Polynomial in g after multiplying by a power of g.
    poly::ZPoly in_g;
    const auto& q = p.q_coeffs();
    long start = (p.low_q() % 2 == 0) ? 0 : 1;
    for (std::size_t i = static_cast<std::size_t>(start); i < q.size(); i += 2) in_g.push_back(q[i]);
    return poly::exact_div(in_g, poly::cyclotomic(root->n)).has_value();
  }
  // q = e^{2 pi i k / 2n} is a primitive m-th root of unity.
  long m = 2 * root->n / std::gcd(root->k == 0 ? 2 * root->n : root->k, 2 * root->n);
  return poly::exact_div(p.q_coeffs(), poly::cyclotomic(m)).has_value();
}

namespace {

CyclotomicValue evaluate_in(const HalfLaurent& p, const RootOfUnity& pt, long field) {
  // field == n: exponents are taken in g; field == 2n: exponents in q.
  bool in_q = field != pt.n;
  CyclotomicValue acc(field, Rational(0));
  const auto& c = p.q_coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    long e = p.low_q() + static_cast<long>(i);
    long power = in_q ? e * pt.k : (e / 2) * pt.k;
    acc += CyclotomicValue::root_power(field, power) * CyclotomicValue(field, Rational(c[i]));
  }
  return acc;
}

}  // namespace

CyclotomicValue evaluate_exact(const HalfLaurent& p, const RootOfUnity& pt) {
  return evaluate_in(p, pt, p.is_integral() ? pt.n : 2 * pt.n);
}

CyclotomicValue evaluate_exact(const RationalFn& f, const RootOfUnity& pt) {
  long field = f.is_integral() ? pt.n : 2 * pt.n;
  CyclotomicValue den = evaluate_in(f.den(), pt, field);
  if (den.is_zero()) throw PreconditionError("pole at " + to_string(CirclePoint(pt)));
  return evaluate_in(f.num(), pt, field) * den.inverse();
}

// ---------------------------------------------------------------------------

void ExclusionSet::add_order_divisors(long m) {
  if (m < 1) throw InputError("order must be positive");
  for (long d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    for (long k = 0; k < d; ++k) {
      if (std::gcd(k, d) == 1) points_.insert(RootOfUnity::make(d, k));
    }
  }
}

bool ExclusionSet::contains(const CirclePoint& pt) const {
  const auto* root = std::get_if<RootOfUnity>(&pt);
  return root != nullptr && points_.count(*root) > 0;
}

bool ExclusionSet::contains_all_primitive(long n) const {
  for (long k = 0; k < n; ++k) {
    if (std::gcd(k, n) == 1 && points_.count(RootOfUnity::make(n, k)) == 0) return false;
  }
  return true;
}

long ExclusionSet::max_order() const {
  long out = 0;
  for (const auto& p : points_) out = std::max(out, p.n);
  return out;
}

}  // namespace lambdak
