#pragma once

#include <functional>
#include <vector>

#include "lambdak/numeric.hpp"

namespace lambdak {

/// Coefficient of t^k in (1+t)^a exp(sum_j (-1)^{j-1} psi(j, x') t^j / j),
/// for x = a + x' with a an integer rank. T needs +=, Rational * T and the
/// supplied product.
template <typename T>
T lambda_series(long k, const Integer& a, const T& reduced, const T& one, const std::function<T(long, const T&)>& psi,
                const std::function<T(const T&, const T&)>& mul) {
  if (k < 0) throw InputError("lambda index must be non-negative");
  const T zero = Rational(0) * one;
  std::vector<T> s(k + 1, zero);
  for (long j = 1; j <= k; ++j) s[j] = Rational(j % 2 == 1 ? 1 : -1, j) * psi(j, reduced);
  // E' = S' E, so n e_n = sum_j j s_j e_{n-j}.
  std::vector<T> e(k + 1, zero);
  e[0] = one;
  for (long n = 1; n <= k; ++n) {
    T acc = zero;
    for (long j = 1; j <= n; ++j) acc += Rational(j) * mul(s[j], e[n - j]);
    e[n] = Rational(1, n) * acc;
  }
  T out = zero;
  Rational binom = 1;  // generalized C(a, j)
  for (long j = 0; j <= k; ++j) {
    if (j > 0) binom = binom * Rational(a - (j - 1)) / Rational(j);
    if (binom != 0) out += binom * e[k - j];
  }
  return out;
}

}  // namespace lambdak
