#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lambdak/circle_point.hpp"
#include "lambdak/reconstruct.hpp"

using namespace lambdak;

namespace {

HalfLaurent g_poly(std::initializer_list<long> ascending, long low = 0) {
  std::vector<Integer> c;
  for (long x : ascending) c.emplace_back(x);
  return HalfLaurent::from_g_coeffs(low, c);
}

const HalfLaurent g = HalfLaurent::g_monomial(1);

HalfLaurent random_laurent(std::mt19937_64& rng, int max_degree, int coeff_range, bool half_powers) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<int> coeff(-coeff_range, coeff_range);
  std::uniform_int_distribution<int> low(-3, 3);
  poly::ZPoly c(deg(rng) + 1);
  for (auto& x : c) x = coeff(rng);
  if (!half_powers) {
    std::vector<Integer> in_g(c.begin(), c.end());
    return HalfLaurent::from_g_coeffs(low(rng), in_g);
  }
  return HalfLaurent::from_q_coeffs(low(rng), c);
}

std::vector<Sample> sample_at(const RationalFn& f, long n, std::vector<long> ks) {
  std::vector<Sample> out;
  for (long k : ks) {
    RootOfUnity pt = RootOfUnity::make(n, k);
    out.push_back({pt, evaluate_exact(f, pt)});
  }
  return out;
}

}  // namespace

TEST(HalfLaurent, DifferenceOfSquares) { EXPECT_EQ((g - 1) * (g + 1), g_poly({-1, 0, 1})); }

TEST(HalfLaurent, HalfPowerSquaresToG) {
  HalfLaurent root_g = HalfLaurent::q_monomial(1);
  EXPECT_FALSE(root_g.is_integral());
  EXPECT_EQ(root_g * root_g, g);
  EXPECT_TRUE((root_g * root_g).is_integral());
}

TEST(HalfLaurent, BinomialCube) { EXPECT_EQ((g + 1).pow(3), g_poly({1, 3, 3, 1})); }

TEST(HalfLaurent, NegativePowerOfNonUnitFails) {
  EXPECT_THROW((g + 1).pow(-1), Error);
  EXPECT_EQ(HalfLaurent::g_monomial(2, -1).pow(-3), HalfLaurent::g_monomial(-6, -1));
}

TEST(HalfLaurent, CanonicalFormHasNoStoredZeros) {
  HalfLaurent p = HalfLaurent::from_q_coeffs(-2, {0, 0, 5, 0, 0});
  EXPECT_EQ(p, HalfLaurent(5));
  EXPECT_TRUE((g - g).is_zero());
  EXPECT_EQ((g - g).low_q(), 0);
}

TEST(HalfLaurent, Printing) {
  EXPECT_EQ(g_poly({1, 1, 1, 1}).to_string(), "1+g+g^2+g^3");
  EXPECT_EQ(HalfLaurent::q_monomial(1, -3).to_string(), "-3g^(1/2)");
  EXPECT_EQ(HalfLaurent::g_monomial(-2).to_string(), "g^-2");
}

TEST(HalfLaurent, RingAxiomsOnRandomElements) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    auto a = random_laurent(rng, 6, 9, true), b = random_laurent(rng, 6, 9, true), c = random_laurent(rng, 6, 9, true);
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
  }
}

TEST(VanishesAt, Examples) {
  EXPECT_TRUE(vanishes_at(g.pow(3) - 1, RootOfUnity::make(3, 1)));
  EXPECT_FALSE(vanishes_at(g.pow(3) - 1, RootOfUnity::make(2, 1)));
  EXPECT_FALSE(vanishes_at(g - 2, GenericPoint{}));
  EXPECT_TRUE(vanishes_at(HalfLaurent(), GenericPoint{}));
}

TEST(VanishesAt, HalfPowersUseQEqualsExpPiIT) {
  // q - 1 vanishes at g = 1 (q = 1) but q + 1 does not.
  HalfLaurent q = HalfLaurent::q_monomial(1);
  EXPECT_TRUE(vanishes_at(q - 1, RootOfUnity::make(1, 0)));
  EXPECT_FALSE(vanishes_at(q + 1, RootOfUnity::make(1, 0)));
  // At g = -1, q = i: q^2 + 1 = g + 1 vanishes.
  EXPECT_TRUE(vanishes_at(q * q + 1, RootOfUnity::make(2, 1)));
}

TEST(VanishesAt, ProductRuleProperty) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> order(1, 12);
  for (int i = 0; i < 300; ++i) {
    // Bias towards factors that do vanish somewhere.
    HalfLaurent a = random_laurent(rng, 3, 2, i % 3 == 0) * (g.pow(order(rng)) - 1);
    HalfLaurent b = random_laurent(rng, 4, 3, i % 2 == 0);
    long n = order(rng);
    std::uniform_int_distribution<long> kd(0, n - 1);
    RootOfUnity pt = RootOfUnity::make(n, kd(rng));
    ASSERT_EQ(vanishes_at(a * b, pt), vanishes_at(a, pt) || vanishes_at(b, pt));
  }
}

TEST(VanishesAt, AgreesWithNumericalEvaluation) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> order(1, 24);
  int vanishing = 0;
  for (int i = 0; i < 400; ++i) {
    long n = order(rng);
    std::uniform_int_distribution<long> kd(0, n - 1);
    RootOfUnity pt = RootOfUnity::make(n, kd(rng));
    HalfLaurent p = random_laurent(rng, 30, 5, i % 2 == 1);
    if (i % 4 == 0) {
      // make an integral multiple of Phi_n(g)
      const auto& phi = poly::cyclotomic(pt.n);
      std::vector<Integer> c(phi.begin(), phi.end());
      p = random_laurent(rng, 10, 4, false) * HalfLaurent::from_g_coeffs(0, c);
    }
    bool exact = vanishes_at(p, pt);
    long double mag = std::abs(p.evaluate_at_t(pt.t()));
    vanishing += exact;
    ASSERT_EQ(exact, mag < 1e-12L) << p.to_string() << " at " << pt.to_string() << " |p|=" << static_cast<double>(mag);
  }
  EXPECT_GT(vanishing, 50);
}

TEST(RationalFn, NormalizeExamples) {
  EXPECT_EQ(RationalFn(g * g - 1, g - 1), RationalFn(g + 1));
  EXPECT_EQ(RationalFn(2 * g, HalfLaurent(2)), RationalFn(g));
  RationalFn zero(HalfLaurent(), g - 1);
  EXPECT_TRUE(zero.is_zero());
  EXPECT_EQ(zero.den(), HalfLaurent(1));
  EXPECT_THROW(RationalFn(g, HalfLaurent()), Error);
}

TEST(RationalFn, NormalizeIsIdempotent) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    auto n = random_laurent(rng, 5, 6, i % 2 == 0);
    auto d = random_laurent(rng, 5, 6, false);
    if (d.is_zero()) continue;
    RationalFn f(n * (g + 1), d * (g + 1));
    RationalFn again(f.num(), f.den());
    ASSERT_EQ(f, again);
    ASSERT_GT(f.den().leading_coeff(), 0);
    ASSERT_EQ(f.den().low_q(), 0);
  }
}

TEST(RationalFn, PrintingUsesPositiveLowestDenominatorTerm) {
  RationalFn f(HalfLaurent(1), 1 - g * g);
  EXPECT_EQ(f.to_string(), "1/(1-g^2)");
  EXPECT_EQ(RationalFn(g, HalfLaurent(2)).to_string(), "g/2");
}

TEST(RationalFn, EqualityMatchesEvaluationAtGenericProxies) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<long double> tdist(0.01L, 0.99L);
  for (int i = 0; i < 100; ++i) {
    auto n1 = random_laurent(rng, 4, 5, false), d1 = random_laurent(rng, 4, 5, false);
    if (d1.is_zero()) continue;
    auto common = random_laurent(rng, 2, 3, false);
    if (common.is_zero()) common = HalfLaurent(1);
    RationalFn a(n1, d1);
    RationalFn b(n1 * common, d1 * common);
    RationalFn c = a + RationalFn(HalfLaurent(1), g + 3);
    ASSERT_EQ(a, b);
    ASSERT_TRUE(RationalFn::cross_equal(a, b));
    ASSERT_NE(a, c);
    for (int j = 0; j < 10; ++j) {
      long double t = tdist(rng);
      ASSERT_LT(std::abs(a.evaluate_at_t(t) - b.evaluate_at_t(t)), 1e-9L * (1 + std::abs(a.evaluate_at_t(t))));
    }
  }
}

TEST(RationalFn, FieldOperations) {
  RationalFn a(HalfLaurent(1), 1 - g);
  RationalFn b(HalfLaurent(1), 1 - g.pow(-1));
  // 1/(1-g) + 1/(1-g^-1) = 1
  EXPECT_TRUE((a + b).is_one());
  EXPECT_EQ(a * a.inverse(), RationalFn(1));
  EXPECT_EQ((a / a), RationalFn(1));
}

TEST(CyclotomicValue, InverseAndEvaluation) {
  for (long n : {1L, 2L, 3L, 5L, 7L, 12L}) {
    for (long k = 0; k < n; ++k) {
      auto pt = RootOfUnity::make(n, k);
      auto z = CyclotomicValue::root_power(pt.n, pt.k);
      auto v = z + CyclotomicValue(pt.n, Rational(3));
      auto w = v * v.inverse();
      EXPECT_EQ(w, CyclotomicValue(pt.n, Rational(1)));
      std::complex<long double> expect = std::polar(1.0L, 2 * std::numbers::pi_v<long double> * pt.t()) + 3.0L;
      EXPECT_LT(std::abs(v.to_complex() - expect), 1e-15L);
    }
  }
}

TEST(RationalReconstruct, OneOverOneMinusGSquared) {
  RationalFn f(HalfLaurent(1), 1 - g * g);
  auto samples = sample_at(f, 11, {1, 2, 3, 4, 5});
  EXPECT_EQ(rational_reconstruct(samples, 2), f);
}

TEST(RationalReconstruct, ConstantHalf) {
  std::vector<Sample> samples{{RootOfUnity::make(1, 0), CyclotomicValue(1, Rational(1, 2))}};
  RationalFn r = rational_reconstruct(samples, 0);
  EXPECT_EQ(r, RationalFn(Rational(1, 2)));
}

TEST(RationalReconstruct, GCubed) {
  RationalFn f(g.pow(3));
  auto samples = sample_at(f, 7, {0, 1, 2, 3, 4, 5, 6});
  EXPECT_EQ(rational_reconstruct(samples, 3), f);
}

TEST(RationalReconstruct, Errors) {
  RationalFn f(g.pow(3));
  EXPECT_THROW(rational_reconstruct(sample_at(f, 7, {1, 2}), 3), PreconditionError);
  // g^3 does not fit degree bound 1 on 5 points.
  EXPECT_THROW(rational_reconstruct(sample_at(f, 7, {1, 2, 3, 4, 5}), 1), PreconditionError);
}

TEST(RationalReconstruct, RoundTripOnRandomFunctions) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> coeff(-20, 20);
  std::uniform_int_distribution<int> deg(0, 8);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Integer> n(deg(rng) + 1), d(deg(rng) + 1);
    for (auto& x : n) x = coeff(rng);
    for (auto& x : d) x = coeff(rng);
    if (d.back() == 0) d.back() = 1;
    RationalFn f(HalfLaurent::from_g_coeffs(0, n), HalfLaurent::from_g_coeffs(0, d));
    std::vector<long> ks;
    for (long k = 1; k <= 17; ++k) ks.push_back(k);
    ASSERT_EQ(rational_reconstruct(sample_at(f, 19, ks), 8), f) << f.to_string();
  }
}
