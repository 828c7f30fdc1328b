#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "lambdak/localization.hpp"

namespace lambdak {
namespace {

using nlohmann::json;

HalfLaurent g(long e) { return HalfLaurent::g_monomial(e); }

json load(const std::string& name) {
  std::ifstream in(std::string(LAMBDAK_FIXTURE_DIR) + "/" + name);
  return json::parse(in);
}

FixedComponent isolated(std::vector<NormalWeight> normal, long l, std::vector<CoefficientSummand> e, int orientation = 1) {
  FixedComponent c;
  c.name = "p";
  c.normal = std::move(normal);
  c.l = l;
  c.coefficient = std::move(e);
  c.orientation = orientation;
  return c;
}

// CP^1 rotated by g^a, coefficient O(m): character sum_j g^{a j}.
FixedPointData rotated_cp1(long a, long m) {
  FixedPointData d;
  d.components.push_back(isolated({{a, 1}}, a, {{a * m, 1}}));
  d.components.push_back(isolated({{a, 1}}, -a, {{0, 1}}, -1));
  return d;
}

HalfLaurent geometric(long a, long m) {
  HalfLaurent out;
  for (long j = 0; j <= m; ++j) out += g(a * j);
  return out;
}

TEST(Localization, IsolatedExamples) {
  EXPECT_EQ(component_contribution(isolated({{1, 1}}, 1, {{0, 1}}), 3), RationalFn(g(1), g(1) - HalfLaurent(1)));
  EXPECT_EQ(component_contribution(isolated({}, 0, {{0, 1}}), 3), RationalFn(1));
  EXPECT_EQ(component_contribution(isolated({{2, 1}}, 2, {{1, 1}}), 3), RationalFn(g(3), g(2) - HalfLaurent(1)));
  // g/(g-1) = 1/(1 - g^{-1}).
  EXPECT_EQ(RationalFn(g(1), g(1) - HalfLaurent(1)), RationalFn(1) / (RationalFn(1) - RationalFn(g(-1))));
}

TEST(Localization, Errors) {
  EXPECT_THROW(component_contribution(isolated({{1, 1}}, 0, {{0, 1}}), 3), PreconditionError);
  FixedComponent big = isolated({{1, 1}}, 1, {{0, 1}});
  big.dim = 2;
  EXPECT_THROW(component_contribution(big, 3), InputError);
  EXPECT_THROW(component_contribution(isolated({{2, 1}}, 0, {{0, 1}}), 3, CirclePoint(RootOfUnity::make(2, 1))),
               PreconditionError);
  EXPECT_THROW(localized_index(rotated_cp1(1, 2), 1, CirclePoint(RootOfUnity::make(1, 0))), PreconditionError);
  EXPECT_THROW(component_contribution(isolated({{0, 1}}, 0, {{0, 1}}), 3), InputError);
}

TEST(Localization, Cp1FixtureAllM) {
  for (long m = 0; m <= 10; ++m) {
    FixedPointData data = parse_fixed_point_data(load("cp1_om.json"), {{"m", m}});
    LocalizedIndex idx = localized_index(data, 2);
    PoleCheck pc = pole_cancellation_check(idx);
    ASSERT_TRUE(pc.cancels) << m;
    EXPECT_EQ(*pc.character, geometric(1, m));
    auto coeffs = sym_expansion(data, -10 - m, 10 + m);
    for (const auto& [k, c] : coeffs) EXPECT_EQ(c, (k >= 0 && k <= m) ? 1 : 0) << "m=" << m << " k=" << k;
    EXPECT_TRUE(cancellation_check(data, m));
    if (m >= 1) EXPECT_FALSE(cancellation_check(data, m - 1));
  }
}

TEST(Localization, Cp1Strings) {
  FixedPointData data = parse_fixed_point_data(load("cp1_om.json"), {{"m", 3}});
  EXPECT_EQ(localized_index(data, 1).value.to_string(), "1+g+g^2+g^3");
  FixedPointData zero = parse_fixed_point_data(load("cp1_om.json"));
  LocalizedIndex idx = localized_index(zero, 1);
  // 1/(1 - g^{-1}) + 1/(1 - g) = 1.
  EXPECT_EQ(idx.contributions[0], RationalFn(1) / (RationalFn(1) - RationalFn(g(-1))));
  EXPECT_EQ(idx.contributions[1], RationalFn(1) / (RationalFn(1) - RationalFn(g(1))));
  EXPECT_TRUE(idx.value.is_one());
}

TEST(Localization, TrivialFixtures) {
  FixedPointData point = parse_fixed_point_data(load("point.json"));
  EXPECT_TRUE(localized_index(point, 1).value.is_one());
  FixedPointData empty = parse_fixed_point_data(load("free_orbit.json"));
  LocalizedIndex idx = localized_index(empty, 1);
  EXPECT_TRUE(idx.value.is_zero());
  PoleCheck pc = pole_cancellation_check(idx);
  EXPECT_TRUE(pc.cancels);
  EXPECT_TRUE(pc.character->is_zero());
  for (const auto& [k, c] : sym_expansion(empty, -10, 10)) EXPECT_EQ(c, 0);
  EXPECT_TRUE(cancellation_check(empty, 0));
}

TEST(Localization, SinglePoleDoesNotCancel) {
  FixedPointData north;
  north.components.push_back(isolated({{1, 1}}, 1, {{0, 1}}));
  EXPECT_FALSE(pole_cancellation_check(localized_index(north, 1)).cancels);
  EXPECT_FALSE(cancellation_check(north, 100));
}

TEST(Localization, RotatedCp1) {
  for (long a = 1; a <= 3; ++a) {
    for (long m = 0; m <= 5; ++m) {
      FixedPointData data = rotated_cp1(a, m);
      PoleCheck pc = pole_cancellation_check(localized_index(data, 1));
      ASSERT_TRUE(pc.cancels);
      EXPECT_EQ(*pc.character, geometric(a, m));
      // Expansion agrees with the Laurent character on the full support.
      long span = a * m + 10;
      for (const auto& [k, c] : sym_expansion(data, -span, span)) EXPECT_EQ(c, pc.character->coeff_q(2 * k)) << k;
    }
  }
}

TEST(Localization, NumericConsistencyAtRandomPoints) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<long double> t(0.01L, 0.99L);
  FixedPointData data = rotated_cp1(2, 3);
  data.components.push_back(isolated({{1, 1}, {3, 2}}, 1, {{1, 2}, {-1, 1}}));
  LocalizedIndex idx = localized_index(data, 2);
  for (int i = 0; i < 10; ++i) {
    std::complex<long double> q = std::polar(1.0L, 3.14159265358979323846L * t(rng));
    std::complex<long double> sum = 0;
    for (const auto& c : idx.contributions) sum += c.evaluate_q(q);
    EXPECT_LT(std::abs(idx.value.evaluate_q(q) - sum), 1e-10L);
  }
}

TEST(Localization, TruncatedInverseRouteAgrees) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> v(1, 3), r(0, 2), w(-2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<NormalWeight> normal;
    long sum = 0;
    for (int i = 0; i < 2; ++i) {
      normal.push_back({v(rng), r(rng)});
      sum += normal.back().v * normal.back().rank;
    }
    long l = w(rng);
    if ((l + sum) % 2 != 0) ++l;
    FixedComponent c = isolated(normal, l, {{w(rng), 1}, {w(rng), 2}});
    RationalFn closed = component_contribution(c, 1);
    for (int n = 1; n <= 3; ++n) EXPECT_EQ(isolated_contribution_via_inverse(c, n), closed);
    // Permuting the normal list changes nothing.
    std::swap(c.normal[0], c.normal[1]);
    EXPECT_EQ(component_contribution(c, 1), closed);
  }
}

TEST(Localization, PositiveDimensionalTrivialAction) {
  // The whole CP^1 fixed, L = K^{-1}, E = O(m): Riemann-Roch gives m + 1.
  for (long m = 0; m <= 4; ++m) {
    FixedComponent c;
    c.name = "cp1";
    c.dim = 2;
    c.l = 0;
    c.coefficient = {{0, 1}};
    c.chern_numbers = std::map<std::string, Rational>{{"c1(T)", 2}, {"c1(L)", 2}, {"c1(E0)", Rational(m)}};
    EXPECT_EQ(component_contribution(c, 1), RationalFn(m + 1));
  }
}

TEST(Localization, Cp2WithFixedLine) {
  // Sections of O(k) on CP^2 with z2 of weight 0 and z0, z1 of weight 1.
  for (long k = 0; k <= 4; ++k) {
    FixedPointData data = parse_fixed_point_data(load("cp2_ok.json"), {{"k", k}});
    for (int cutoff : {1, 3}) {
      PoleCheck pc = pole_cancellation_check(localized_index(data, cutoff));
      ASSERT_TRUE(pc.cancels) << k;
      HalfLaurent expected;
      for (long j = 0; j <= k; ++j) expected += HalfLaurent::g_monomial(j, j + 1);
      EXPECT_EQ(*pc.character, expected);
    }
  }
  EXPECT_THROW(sym_expansion(parse_fixed_point_data(load("cp2_ok.json")), 0, 1), PreconditionError);
}

TEST(Localization, MissingChernNumber) {
  json j = load("cp2_ok.json");
  j["components"][0]["chern_numbers"].erase("c1(L)");
  FixedPointData data = parse_fixed_point_data(j);
  try {
    localized_index(data, 1);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("c1(L)"), std::string::npos);
  }
  j["components"][0]["chern_numbers"]["c1(Q)"] = 1;
  EXPECT_THROW(localized_index(parse_fixed_point_data(j), 1), InputError);
}

TEST(Localization, ParsingAndRoundTrip) {
  json j = load("cp1_om.json");
  j["components"][0]["E"][0]["weight"] = "2*m-1";
  FixedPointData data = parse_fixed_point_data(j, {{"m", 3}});
  EXPECT_EQ(data.components[0].coefficient[0].weight, 5);
  FixedPointData again = parse_fixed_point_data(to_json(data));
  EXPECT_EQ(to_json(again), to_json(data));
  j["components"][0]["E"][0]["weight"] = "m+";
  EXPECT_THROW(parse_fixed_point_data(j), InputError);
  j["components"][0]["E"][0]["weight"] = "n";
  EXPECT_THROW(parse_fixed_point_data(j), InputError);
  EXPECT_THROW(parse_fixed_point_data(json{{"components", 3}}), InputError);
  EXPECT_THROW(parse_fixed_point_data(json::parse(R"({"components":[{"l":"x"}]})")), InputError);
  EXPECT_THROW(parse_fixed_point_data(json::parse(R"({"components":[{"l":1,"normal":[{"v":1,"rank":2}]}]})")),
               PreconditionError);
}

TEST(Localization, ExclusionSet) {
  FixedPointData data = rotated_cp1(3, 1);
  data.extra_excluded.push_back(RootOfUnity::make(5, 2));
  ExclusionSet a = exclusion_set(data);
  EXPECT_TRUE(a.contains(CirclePoint(RootOfUnity::make(3, 1))));
  EXPECT_TRUE(a.contains(CirclePoint(RootOfUnity::make(1, 0))));
  EXPECT_TRUE(a.contains(CirclePoint(RootOfUnity::make(5, 2))));
  EXPECT_FALSE(a.contains(CirclePoint(RootOfUnity::make(2, 1))));
  EXPECT_FALSE(a.contains(CirclePoint(GenericPoint{})));
}

}  // namespace
}  // namespace lambdak
