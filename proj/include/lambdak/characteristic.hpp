#pragma once

#include <optional>
#include <vector>

#include "lambdak/circle_point.hpp"
#include "lambdak/symseries.hpp"

namespace lambdak {

/// Weight-v summand of a normal bundle, of the given rank.
struct NormalWeight {
  long v;
  int rank;
};

// One-variable factors f(u); products over roots come from multiplicative_series.

/// (u/2) / sinh(u/2).
Univariate<Rational> a_hat_factor(int cutoff);
/// g^{v/2} e^{u/2} / (g^v e^u - 1).
Univariate<RationalFn> a_hat_g_factor(long v, int cutoff);
/// 1 - g^{-v} e^{-u}.
Univariate<RationalFn> lambda_minus_one_dual_factor(long v, int cutoff);
/// weight * e^{s u}.
Univariate<RationalFn> twisted_exp(const HalfLaurent& weight, const Rational& s, int cutoff);
Univariate<RationalFn> to_equivariant(const Univariate<Rational>& f);
EquivSymSeries to_equivariant(const SymSeries& s);

/// ch = sum_j exp(u_j).
SymSeries chern_character(int r, int cutoff);
/// sigma_k(e^{u_1}, ..., e^{u_r}), the character of the k-th exterior power; 0 for k > r.
SymSeries lambda_ch(int k, int r, int cutoff);
/// u_j -> k u_j.
SymSeries adams_ch(long k, const SymSeries& s);
/// sigma_i(e^{u_1} - 1, ..., e^{u_r} - 1), the character of gamma^i(E - r).
SymSeries gamma_ch_reduced(int i, int r, int cutoff);
/// Checks sum_i sigma_i(e^u) t^i (1-t)^{r-i} = sum_i sigma_i(e^u - 1) t^i.
bool verify_gamma_generating_identity(int r, int cutoff);

/// prod_j (u_j/2) / sinh(u_j/2).
SymSeries a_hat(int r, int cutoff);
/// Equivariant A-hat of a normal bundle, one alphabet per weight summand.
/// Throws PreconditionError "point in exclusion set A" when g^v = 1 at `point`.
EquivSymSeries a_hat_g_normal(const std::vector<NormalWeight>& weights, int cutoff,
                              const std::optional<CirclePoint>& point = std::nullopt);
/// g^v ch(E) for a rank-r bundle on which g acts by g^v.
EquivSymSeries ch_g_bundle(long v, int r, int cutoff);
/// g^{l/2} exp(c1(L)/2).
EquivSymSeries ch_g_sqrt_line(long l, int cutoff);

/// Checks, with alphabets (T, L, N_1, ..., N_m):
///   ch_g(lambda_{-1} N*) = A_g(N)^{-1} ch_g(det N^{-1/2}),
///   td_g(TY, L) ch_g(lambda_{-1} N*) = td(T, L (x) det N^{-1}) with g-weight l - sum v r_v,
/// where ch_g(lambda_{-1} N*) = prod (1 - g^{-v} e^{-u}) is expanded directly.
bool verify_normal_bundle_identities(const std::vector<NormalWeight>& weights, long l, int cutoff, int tangent_rank = 1,
                                     const std::optional<CirclePoint>& point = std::nullopt);

/// Throws unless every weight is positive and, if a point is given, g^v != 1 there.
void check_normal_weights(const std::vector<NormalWeight>& weights, const std::optional<CirclePoint>& point);

}  // namespace lambdak
