#include "lambdak/characteristic.hpp"

namespace lambdak {

namespace {

Layout single(int r, int cutoff) { return Layout{{r}, cutoff}; }

HalfLaurent g_minus_one(long v) { return HalfLaurent::g_monomial(v) - HalfLaurent(1); }

}  // namespace

Univariate<Rational> a_hat_factor(int cutoff) {
  // sinh(x)/x = sum x^{2n}/(2n+1)! with x = u/2, then invert.
  Univariate<Rational> s(cutoff + 1, Rational(0));
  for (int k = 0; k <= cutoff; k += 2) s[k] = Rational(1) / (Rational(factorial(k + 1)) * Rational(ipow(2, k)));
  return uni_inverse(s);
}

Univariate<RationalFn> twisted_exp(const HalfLaurent& weight, const Rational& s, int cutoff) {
  auto e = uni_exp_linear<RationalFn>(s, cutoff);
  for (auto& c : e) c *= RationalFn(weight);
  return e;
}

Univariate<RationalFn> a_hat_g_factor(long v, int cutoff) {
  auto num = twisted_exp(HalfLaurent::q_monomial(v), Rational(1, 2), cutoff);
  auto den = twisted_exp(HalfLaurent::g_monomial(v), Rational(1), cutoff);
  den[0] -= RationalFn(1);
  return uni_mul(num, uni_inverse(den));
}

Univariate<RationalFn> lambda_minus_one_dual_factor(long v, int cutoff) {
  auto out = twisted_exp(HalfLaurent::g_monomial(-v), Rational(-1), cutoff);
  for (auto& c : out) c = -c;
  out[0] += RationalFn(1);
  return out;
}

Univariate<RationalFn> to_equivariant(const Univariate<Rational>& f) {
  Univariate<RationalFn> out;
  for (const auto& c : f) out.emplace_back(c);
  return out;
}

EquivSymSeries to_equivariant(const SymSeries& s) {
  EquivSymSeries out(s.layout(), s.basis());
  for (const auto& [k, c] : s.terms()) out.add_term(k, RationalFn(c));
  return out;
}

SymSeries chern_character(int r, int cutoff) {
  if (r < 1 || cutoff < 0) throw InputError("rank must be positive");
  return additive_series(single(r, cutoff), 0, uni_exp_linear<Rational>(1, cutoff));
}

SymSeries lambda_ch(int k, int r, int cutoff) {
  if (r < 1 || cutoff < 0) throw InputError("rank must be positive");
  return elementary_of(single(r, cutoff), 0, uni_exp_linear<Rational>(1, cutoff), k);
}

SymSeries adams_ch(long k, const SymSeries& s) {
  if (k < 1) throw InputError("Adams index must be positive");
  return s.adams(k);
}

SymSeries gamma_ch_reduced(int i, int r, int cutoff) {
  if (r < 1 || cutoff < 0) throw InputError("rank must be positive");
  auto f = uni_exp_linear<Rational>(1, cutoff);
  f[0] = 0;
  return elementary_of(single(r, cutoff), 0, f, i);
}

bool verify_gamma_generating_identity(int r, int cutoff) {
  std::vector<SymSeries> sigma;
  for (int i = 0; i <= r; ++i) sigma.push_back(lambda_ch(i, r, cutoff));
  for (int j = 0; j <= r; ++j) {
    // Coefficient of t^j in sum_i sigma_i t^i (1-t)^{r-i}.
    SymSeries lhs(single(r, cutoff));
    for (int i = 0; i <= j; ++i) {
      Rational c(binomial(r - i, j - i));
      if ((j - i) % 2 == 1) c = -c;
      lhs += c * sigma[i];
    }
    if (!(lhs == gamma_ch_reduced(j, r, cutoff))) return false;
  }
  return true;
}

SymSeries a_hat(int r, int cutoff) {
  if (r < 0 || cutoff < 0) throw InputError("rank must be non-negative");
  return multiplicative_series(single(r, cutoff), 0, a_hat_factor(cutoff));
}

void check_normal_weights(const std::vector<NormalWeight>& weights, const std::optional<CirclePoint>& point) {
  for (const auto& w : weights) {
    if (w.v < 1) throw InputError("normal weights must be positive");
    if (w.rank < 0) throw InputError("normal ranks must be non-negative");
    if (point && w.rank > 0 && vanishes_at(g_minus_one(w.v), *point))
      throw PreconditionError("point in exclusion set A");
  }
}

EquivSymSeries a_hat_g_normal(const std::vector<NormalWeight>& weights, int cutoff,
                              const std::optional<CirclePoint>& point) {
  check_normal_weights(weights, point);
  Layout layout{{}, cutoff};
  for (const auto& w : weights) layout.ranks.push_back(w.rank);
  EquivSymSeries out = EquivSymSeries::constant(layout, RationalFn(1));
  for (std::size_t a = 0; a < weights.size(); ++a) out *= multiplicative_series(layout, a, a_hat_g_factor(weights[a].v, cutoff));
  return out;
}

EquivSymSeries ch_g_bundle(long v, int r, int cutoff) {
  return RationalFn(HalfLaurent::g_monomial(v)) * to_equivariant(chern_character(r, cutoff));
}

EquivSymSeries ch_g_sqrt_line(long l, int cutoff) {
  return additive_series(single(1, cutoff), 0, twisted_exp(HalfLaurent::q_monomial(l), Rational(1, 2), cutoff));
}

bool verify_normal_bundle_identities(const std::vector<NormalWeight>& weights, long l, int cutoff, int tangent_rank,
                                     const std::optional<CirclePoint>& point) {
  check_normal_weights(weights, point);
  if (tangent_rank < 0) throw InputError("tangent rank must be non-negative");
  Layout layout{{tangent_rank, 1}, cutoff};
  for (const auto& w : weights) layout.ranks.push_back(w.rank);
  const std::size_t first_normal = 2;
  auto one = EquivSymSeries::constant(layout, RationalFn(1));

  EquivSymSeries a_g = one;
  EquivSymSeries lambda_dual = one;
  EquivSymSeries c1_normal(layout);
  long total_weight = 0;  // sum v r_v
  for (std::size_t a = 0; a < weights.size(); ++a) {
    a_g *= multiplicative_series(layout, first_normal + a, a_hat_g_factor(weights[a].v, cutoff));
    lambda_dual *= multiplicative_series(layout, first_normal + a, lambda_minus_one_dual_factor(weights[a].v, cutoff));
    c1_normal += EquivSymSeries::variable(layout, first_normal + a, 1);
    total_weight += weights[a].v * weights[a].rank;
  }
  EquivSymSeries det_half = RationalFn(HalfLaurent::q_monomial(-total_weight)) *
                            (RationalFn(Rational(-1, 2)) * c1_normal).exp();
  if (!(lambda_dual == a_g.inverse() * det_half)) return false;

  EquivSymSeries a_t = multiplicative_series(layout, 0, to_equivariant(a_hat_factor(cutoff)));
  EquivSymSeries c1_line = EquivSymSeries::variable(layout, 1, 1);
  EquivSymSeries sqrt_line = RationalFn(HalfLaurent::q_monomial(l)) * (RationalFn(Rational(1, 2)) * c1_line).exp();
  EquivSymSeries td_g = a_t * a_g * sqrt_line;
  EquivSymSeries rhs = RationalFn(HalfLaurent::q_monomial(l - total_weight)) * a_t *
                       (RationalFn(Rational(1, 2)) * (c1_line - c1_normal)).exp();
  return td_g * lambda_dual == rhs;
}

}  // namespace lambdak
