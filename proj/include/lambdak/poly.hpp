#pragma once

// Dense univariate polynomials, coefficients in ascending degree order.
// An empty vector is the zero polynomial; results are always trimmed.

#include <optional>
#include <vector>

#include "lambdak/numeric.hpp"

namespace lambdak::poly {

using ZPoly = std::vector<Integer>;
using QPoly = std::vector<Rational>;

template <class P>
void trim(P& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

template <class P>
long degree(const P& p) {
  return static_cast<long>(p.size()) - 1;
}

template <class P>
P add(const P& a, const P& b) {
  P out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  trim(out);
  return out;
}

template <class P>
P sub(const P& a, const P& b) {
  P out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

template <class P>
P mul(const P& a, const P& b) {
  if (a.empty() || b.empty()) return {};
  P out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

Integer content(const ZPoly& p);
ZPoly primitive_part(const ZPoly& p);

/// Exact quotient a / b in Z[x], or nullopt when b does not divide a.
std::optional<ZPoly> exact_div(const ZPoly& a, const ZPoly& b);

/// Primitive gcd with positive leading coefficient; gcd(0, 0) = 0.
ZPoly gcd(const ZPoly& a, const ZPoly& b);

/// n-th cyclotomic polynomial.
ZPoly cyclotomic(long n);

QPoly to_q(const ZPoly& p);

/// Division with remainder in Q[x].
void divmod(const QPoly& a, const QPoly& b, QPoly& quot, QPoly& rem);
QPoly mod(const QPoly& a, const QPoly& b);

/// Inverse of a modulo m in Q[x]; throws when gcd(a, m) != 1.
QPoly inverse_mod(const QPoly& a, const QPoly& m);

/// Lcm of denominators times a, giving an integer polynomial with the same roots.
ZPoly clear_denominators(const QPoly& p);

}  // namespace lambdak::poly
