#pragma once

#include <utility>
#include <vector>

#include "lambdak/circle_point.hpp"

namespace lambdak {

struct Sample {
  RootOfUnity point;
  /// Exact value in Q(zeta_n), n = point.n.
  CyclotomicValue value;
};

/// Cauchy rational interpolation over Q from exact root-of-unity samples.
///
/// Finds P, Q in Z[g] of degree <= degree_bound with P(z) = f(z) Q(z) at every
/// sample (one linear equation over Q per basis coordinate of Q(zeta_n)).
/// With at least 2*degree_bound+1 distinct points any kernel vector yields the
/// same reduced P/Q, which is then re-checked against every sample.
/// Throws PreconditionError("insufficient samples") or ("inconsistent samples").
RationalFn rational_reconstruct(const std::vector<Sample>& samples, int degree_bound);

/// Kernel of a rational matrix (rows x cols), as a list of basis vectors.
std::vector<std::vector<Rational>> nullspace(std::vector<std::vector<Rational>> rows, std::size_t cols);

}  // namespace lambdak
