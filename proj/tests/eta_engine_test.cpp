#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "lambdak/eta_engine.hpp"

namespace lambdak {
namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

HalfLaurent g(long e) { return HalfLaurent::g_monomial(e); }
RationalFn inv_one_minus(long k) { return RationalFn(HalfLaurent(1), HalfLaurent(1) - g(k)); }
std::complex<long double> closed_numeric(long k, long double t) {
  return 1.0L / (1.0L - std::polar(1.0L, 2.0L * kPi * static_cast<long double>(k) * t));
}

RootEvaluator evaluator(const RationalFn& f) {
  return [f](const RootOfUnity& pt) { return evaluate_exact(f, pt); };
}

ExclusionSet roots_of_order_dividing(long m) {
  ExclusionSet a;
  a.add_order_divisors(m);
  return a;
}

TEST(CircleEta, ClosedForm) {
  CircleEtaValue v = circle_eta_closed(1, GenericPoint{});
  EXPECT_FALSE(v.in_exclusion);
  EXPECT_FALSE(v.value);
  EXPECT_EQ(v.function, inv_one_minus(1));

  CircleEtaValue on_a = circle_eta_closed(3, RootOfUnity::make(3, 1));
  EXPECT_TRUE(on_a.in_exclusion);
  EXPECT_EQ(on_a.value->rational_value(), Rational(1, 2));
  EXPECT_EQ(on_a.to_string(), "1/2");

  CircleEtaValue off_a = circle_eta_closed(2, RootOfUnity::make(3, 1));
  EXPECT_FALSE(off_a.in_exclusion);
  EXPECT_EQ(*off_a.value, evaluate_exact(inv_one_minus(2), RootOfUnity::make(3, 1)));
  EXPECT_LT(std::abs(off_a.numeric(1.0L / 3) - closed_numeric(2, 1.0L / 3)), 1e-15L);

  EXPECT_THROW(circle_eta_closed(0, GenericPoint{}), InputError);
}

TEST(CircleEta, HalfOnEveryPointOfA) {
  for (long k = 1; k <= 5; ++k) {
    for (long j = 0; j < k; ++j) {
      CircleEtaValue v = circle_eta_closed(k, RootOfUnity::make(k, j));
      EXPECT_TRUE(v.in_exclusion);
      EXPECT_EQ(v.value->rational_value(), Rational(1, 2));
    }
  }
}

TEST(CircleEta, PolesAreExactlyA) {
  for (long k = 1; k <= 6; ++k) {
    PoleReport poles = unit_circle_poles(inv_one_minus(k));
    std::vector<long> divisors;
    for (long d = 1; d <= k; ++d) {
      if (k % d == 0) divisors.push_back(d);
    }
    EXPECT_EQ(poles.cyclotomic_orders, divisors);
    EXPECT_EQ(poles.other_unit_circle_roots, 0);
  }
}

TEST(CircleEta, AbelOracleExamples) {
  AbelEstimate a = circle_eta_abel_oracle(1, 0.3L);
  EXPECT_LT(std::abs(a.reduced - closed_numeric(1, 0.3L)), 1e-9L);
  AbelEstimate b = circle_eta_abel_oracle(2, Rational(3, 20));
  EXPECT_LT(std::abs(b.reduced - closed_numeric(1, 0.3L)), 1e-9L);
  AbelEstimate c = circle_eta_abel_oracle(3, 0.2L), d = circle_eta_abel_oracle(3, 0.8L);
  EXPECT_LT(std::abs(c.reduced - std::conj(d.reduced)), 1e-9L);
  EXPECT_THROW(circle_eta_abel_oracle(3, Rational(1, 3)), PreconditionError);
  EXPECT_THROW(circle_eta_abel_oracle(2, 0.5L), PreconditionError);
}

TEST(CircleEta, AbelOracleRandomPoints) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<long double> u(0.0L, 1.0L);
  for (long k = 1; k <= 5; ++k) {
    for (int i = 0; i < 20;) {
      long double t = u(rng);
      long double kt = static_cast<long double>(k) * t;
      if (std::abs(kt - std::round(kt)) < 0.02L) continue;
      EXPECT_LT(circle_eta_abel_oracle(k, t).error, 1e-9L) << "k=" << k << " t=" << static_cast<double>(t);
      ++i;
    }
  }
}

TEST(CircleEta, ApsDisc) {
  for (long k = 1; k <= 5; ++k) EXPECT_TRUE(aps_disc_consistency(k));
  EXPECT_TRUE(aps_disc_consistency(2, CirclePoint(RootOfUnity::make(3, 1))));
  EXPECT_THROW(aps_disc_consistency(3, CirclePoint(RootOfUnity::make(3, 1))), PreconditionError);
  // The positive-orientation assignment gives the mirror image 1/(1 - g^{-k}).
  FixedComponent plain;
  plain.normal = {{2, 1}};
  plain.l = 2;
  plain.coefficient = {{0, 1}};
  EXPECT_EQ(component_contribution(plain, 1), RationalFn(1) / (RationalFn(1) - RationalFn(g(-2))));
}

TEST(EtaComponents, Sum) {
  ComponentEtaData empty;
  EXPECT_TRUE(eta_component_sum(empty).is_zero());
  ComponentEtaData one;
  one.entries = {{0, 1, 1, Rational(1, 2)}};
  EXPECT_EQ(eta_component_sum(one), RationalFn(g(1), HalfLaurent(2)));
  ComponentEtaData mirrored;
  mirrored.entries = {{2, 1, 1, Rational(3, 7)}, {2, 1, -1, Rational(3, 7)}};
  EXPECT_TRUE(eta_component_sum(mirrored).is_zero());
}

TEST(EtaComponents, SplitAmbiguity) {
  // Adding the same bundle to mu_+ and mu_- leaves the difference unchanged.
  ComponentEtaData d;
  d.prefactor_exp = -1;
  d.entries = {{0, 1, 1, Rational(1, 3)}, {1, 2, -1, Rational(-5, 4)}};
  RationalFn base = eta_component_sum(d);
  d.entries.push_back({3, 1, 1, Rational(2, 9)});
  d.entries.push_back({3, 1, -1, Rational(2, 9)});
  EXPECT_EQ(eta_component_sum(d), base);
}

ComponentEtaData synthetic_component() {
  ComponentEtaData d;
  d.name = "a";
  d.weights = {{1, 1}, {2, 1}};
  d.prefactor_exp = -1;
  d.entries = {{0, 1, 1, Rational(1, 2)}, {1, 2, -1, Rational(3, 2)}, {2, 1, 1, Rational(-1)}};
  return d;
}

TEST(QDefect, ZeroWhenTotalMatches) {
  ComponentEtaData d = synthetic_component();
  d.dim = 2;
  RationalFn part = eta_component_sum(d) / RationalFn((g(1) - HalfLaurent(1)).pow(3) * (g(2) - HalfLaurent(1)).pow(3));
  QDefect q = q_defect_assemble(part, {d}, 2);
  EXPECT_TRUE(q.value.is_zero());
  EXPECT_TRUE(q.denominator_divides);
  EXPECT_FALSE(q.warnings.empty());
  EXPECT_EQ(q.threshold, n_rm_bound(1, 2));
}

TEST(QDefect, CircleFamily) {
  for (long k = 1; k <= 4; ++k) {
    QDefect q = q_defect_assemble(inv_one_minus(k), {}, 1);
    EXPECT_EQ(q.value, inv_one_minus(k));
    RationalityResult r = verify_rationality(evaluator(q.value), roots_of_order_dividing(k), static_cast<int>(k));
    ASSERT_TRUE(r.ok) << r.failure;
    EXPECT_EQ(*r.value, inv_one_minus(k));
  }
  EXPECT_THROW(q_defect_assemble(inv_one_minus(2), {}, 1, CirclePoint(RootOfUnity::make(2, 1))), PreconditionError);
}

TEST(QDefect, PlantAndRecover) {
  ComponentEtaData d = synthetic_component();
  ComponentEtaData e;
  e.weights = {{1, 2}};
  e.prefactor_exp = 0;
  e.entries = {{1, 1, 1, Rational(1)}, {0, 1, -1, Rational(2)}};
  RationalFn planted_total = RationalFn(HalfLaurent(3)) / RationalFn(HalfLaurent(1) - g(3));
  QDefect q = q_defect_assemble(planted_total, {d, e}, 1);
  EXPECT_TRUE(q.denominator_divides);
  // Denominator divides F_N = (g-1)^{2+1} (g^2-1)^{1+1} times the total's.
  EXPECT_TRUE((q.component_part * RationalFn(q.f_n)).den().is_constant());
  ExclusionSet a;
  a.add_order_divisors(2);
  a.add_order_divisors(3);
  RationalityResult r = verify_rationality(evaluator(q.value), a, 12);
  ASSERT_TRUE(r.ok) << r.failure;
  EXPECT_EQ(*r.value, q.value);
}

TEST(Rationality, Examples) {
  RationalityResult r = verify_rationality(evaluator(inv_one_minus(2)), roots_of_order_dividing(2), 2);
  ASSERT_TRUE(r.ok) << r.failure;
  EXPECT_EQ(*r.value, inv_one_minus(2));
  EXPECT_GE(r.samples_used, 5u);

  RationalityResult half = verify_rationality(
      [](const RootOfUnity& pt) { return CyclotomicValue(pt.n, Rational(1, 2)); }, ExclusionSet{}, 0);
  ASSERT_TRUE(half.ok);
  EXPECT_EQ(*half.value, RationalFn(Rational(1, 2)));

  RationalityResult bad = verify_rationality(evaluator(inv_one_minus(3)), roots_of_order_dividing(2), 3);
  EXPECT_FALSE(bad.ok);
  EXPECT_NE(bad.failure.find("pole outside A"), std::string::npos);
}

TEST(Rationality, PoleOutsideADetectedByFactorization) {
  // Sampling never reaches order 13, so the pole set check has to find it.
  RationalityResult ok = verify_rationality(evaluator(inv_one_minus(13)), roots_of_order_dividing(13), 13);
  ASSERT_TRUE(ok.ok) << ok.failure;
  RationalityResult bad = verify_rationality(evaluator(inv_one_minus(13)), roots_of_order_dividing(1), 13);
  EXPECT_FALSE(bad.ok);
  EXPECT_NE(bad.failure.find("primitive 13-th"), std::string::npos);
}

TEST(Rationality, NonCyclotomicUnitCirclePole) {
  // g^4 - g^3 - g^2 - g + 1 has two roots on the unit circle, neither a root of unity.
  HalfLaurent salem = HalfLaurent::from_g_coeffs(0, {1, -1, -1, -1, 1});
  RationalFn f(HalfLaurent(1), salem);
  PoleReport p = unit_circle_poles(f);
  EXPECT_TRUE(p.cyclotomic_orders.empty());
  EXPECT_EQ(p.other_unit_circle_roots, 1);  // one conjugate pair, one y = g + 1/g
  RationalityResult r = verify_rationality(evaluator(f), ExclusionSet{}, 4);
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.failure.find("not roots of unity"), std::string::npos);
  // Roots 2 and 1/2 are off the circle.
  RationalFn off(HalfLaurent(1), HalfLaurent::from_g_coeffs(0, {2, -5, 2}));
  EXPECT_EQ(unit_circle_poles(off).other_unit_circle_roots, 0);
  EXPECT_TRUE(verify_rationality(evaluator(off), ExclusionSet{}, 2).ok);
}

TEST(Rationality, RandomPlantedRoundTrip) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> coeff(-4, 4), small(1, 3);
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<Integer> num;
    for (int i = 0; i <= 4 + trial % 4; ++i) num.push_back(coeff(rng));
    // Denominator: a cyclotomic part plus a factor with no roots in the closed unit disc.
    long n = small(rng) + 1;
    poly::ZPoly den = poly::cyclotomic(n);
    poly::ZPoly safe{Integer(7), Integer(coeff(rng) % 3), Integer(coeff(rng) % 3)};
    den = poly::mul(den, safe);
    if (poly::degree(den) > 8) continue;
    RationalFn planted(HalfLaurent::from_g_coeffs(0, num), HalfLaurent::from_g_coeffs(0, den));
    ExclusionSet a;
    a.add_order_divisors(n);
    RationalityResult r = verify_rationality(evaluator(planted), a, 8);
    ASSERT_TRUE(r.ok) << r.failure;
    EXPECT_GE(r.samples_used, 17u);
    EXPECT_EQ(*r.value, planted);
  }
}

TEST(EtaData, Parse) {
  auto j = nlohmann::json::parse(R"({"components":[{"name":"a","l":1,"weights":[{"v":1,"rank":1}],
    "entries":[{"k":0,"v":1,"sign":"+","eta":"1/2"},{"k":1,"v":1,"sign":"-","eta":1}]}],"N":3})");
  EtaDataFile f = parse_eta_data(j);
  EXPECT_EQ(f.level, 3);
  EXPECT_EQ(f.components[0].prefactor_exp, 0);
  EXPECT_EQ(eta_component_sum(f.components[0]), RationalFn(g(1), HalfLaurent(2)) - RationalFn(g(2)));
  j["components"][0]["l"] = 2;
  EXPECT_THROW(parse_eta_data(j), PreconditionError);
  j["components"][0]["l"] = 1;
  j["components"][0]["entries"][0]["sign"] = "*";
  EXPECT_THROW(parse_eta_data(j), InputError);
  EXPECT_THROW(parse_eta_data(nlohmann::json::parse(R"({"components":[{"entries":[{"k":0}]}]})")), InputError);
}

}  // namespace
}  // namespace lambdak
