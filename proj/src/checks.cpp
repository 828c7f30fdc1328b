#include "lambdak/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <tuple>

#include "lambdak/characteristic.hpp"
#include "lambdak/lambda_engine.hpp"
#include "lambdak/lambda_series.hpp"
#include "lambdak/localization.hpp"
#include "lambdak/parallel.hpp"
#include "lambdak/reconstruct.hpp"

namespace lambdak {

using nlohmann::json;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  json witness;
};

Outcome fail(std::string detail, json witness) { return Outcome{false, std::move(detail), std::move(witness)}; }
Outcome pass(std::string detail) { return Outcome{true, std::move(detail), nullptr}; }

template <class F>
CheckResult run_check(std::string name, F body) {
  CheckResult r;
  r.name = std::move(name);
  try {
    Outcome o = body();
    r.status = o.ok ? CheckStatus::Pass : CheckStatus::Fail;
    r.detail = std::move(o.detail);
    r.witness = std::move(o.witness);
  } catch (const Error& e) {
    r.status = CheckStatus::Error;
    r.detail = e.what();
  }
  return r;
}

json weights_json(const std::vector<NormalWeight>& w) {
  json out = json::array();
  for (const auto& x : w) out.push_back({{"v", x.v}, {"rank", x.rank}});
  return out;
}

long weighted_rank(const std::vector<NormalWeight>& w) {
  long s = 0;
  for (const auto& x : w) s += x.v * x.rank;
  return s;
}

std::vector<Rational> random_roots(std::mt19937_64& rng, int r) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
  std::vector<Rational> out;
  for (int i = 0; i < r; ++i) {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

Univariate<Rational> exp_series(const Rational& u, int cutoff) {
  Univariate<Rational> out(cutoff + 1, Rational(0));
  Rational term = 1;
  for (int n = 0; n <= cutoff; ++n) {
    out[n] = term;
    term = term * u / Rational(n + 1);
  }
  return out;
}

// Closed forms of the given parity (kernel of d).
std::vector<Form> closed_basis(const CdgaPtr& alg, int parity) {
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < alg->dim(); ++i) {
    if (alg->basis_degree(i) % 2 == parity) cols.push_back(i);
  }
  std::vector<std::vector<Rational>> rows(alg->dim(), std::vector<Rational>(cols.size(), Rational(0)));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    Form image = alg->basis_element(cols[c]).d();
    for (std::size_t r = 0; r < alg->dim(); ++r) rows[r][c] = image[r];
  }
  std::vector<Form> out;
  for (const auto& v : nullspace(rows, cols.size())) {
    Form f = alg->zero();
    for (std::size_t c = 0; c < cols.size(); ++c) f += v[c] * alg->basis_element(cols[c]);
    out.push_back(f);
  }
  return out;
}

std::vector<Form> parity_basis(const CdgaPtr& alg, int parity) {
  std::vector<Form> out;
  for (std::size_t i = 0; i < alg->dim(); ++i) {
    if (alg->basis_degree(i) % 2 == parity) out.push_back(alg->basis_element(i));
  }
  return out;
}

Form random_combination(const CdgaPtr& alg, const std::vector<Form>& basis, std::mt19937_64& rng, bool integral) {
  std::uniform_int_distribution<int> coeff(-3, 3), den(1, 2);
  Form f = alg->zero();
  for (const auto& b : basis) {
    Rational c(coeff(rng), integral ? 1 : den(rng));
    c.canonicalize();
    f += c * b;
  }
  return f;
}

GammaElement random_gamma(const CdgaPtr& alg, std::mt19937_64& rng) {
  return GammaElement(random_combination(alg, closed_basis(alg, 0), rng, true),
                      random_combination(alg, parity_basis(alg, 1), rng, false));
}

std::string algebra_name(std::size_t i) { return i == 0 ? "torus" : "exact_pair"; }

const char* kCp1Data = R"js({
  "parameters": {"m": 0},
  "components": [
    {"name": "north", "dim": 0, "normal": [{"v": 1, "rank": 1}], "l": 1, "E": [{"weight": "m", "rank": 1}]},
    {"name": "south", "dim": 0, "normal": [{"v": 1, "rank": 1}], "l": -1, "orientation": -1,
     "E": [{"weight": 0, "rank": 1}]}
  ]})js";

const char* kCp2Data = R"js({
  "parameters": {"k": 0},
  "components": [
    {"name": "line", "dim": 2, "normal": [{"v": 1, "rank": 1}], "l": 1, "E": [{"weight": "k", "rank": 1}],
     "chern_numbers": {"c1(T)": 2, "c1(L)": 3, "c1(N1)": 1, "c1(E0)": "k"}},
    {"name": "point", "dim": 0, "normal": [{"v": 1, "rank": 2}], "l": -2, "E": [{"weight": 0, "rank": 1}]}
  ]})js";

std::vector<std::vector<NormalWeight>> default_weight_sets() {
  return {{{1, 1}}, {{1, 2}}, {{2, 1}}, {{1, 1}, {2, 1}}, {{1, 1}, {3, 2}}};
}

}  // namespace

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Error:
      return "error";
  }
  return "error";
}

json CheckResult::to_json() const {
  json j{{"name", name}, {"status", lambdak::to_string(status)}, {"detail", detail}};
  if (!witness.is_null()) j["witness"] = witness;
  return j;
}

std::vector<CdgaPtr> check_algebras() { return {Cdga::torus(), Cdga::exact_pair()}; }

CheckResult check_unit_identity(const std::vector<std::vector<NormalWeight>>& sets, const std::vector<int>& cutoffs,
                                int level) {
  return run_check("unit-identity", [&] {
    int cases = 0;
    for (const auto& w : sets) {
      for (int d : cutoffs) {
        const int n = level > 0 ? level : d;
        if (n < d) continue;
        if (!verify_unit_identity(w, n, d)) return fail("identity fails", {{"weights", weights_json(w)}, {"N", n}, {"D", d}});
        ++cases;
      }
    }
    return pass(std::to_string(cases) + " cases");
  });
}

CheckResult check_gamma_closed_form(int r_max, int k_max) {
  return run_check("gamma-closed-form", [&] {
    for (int r = 1; r <= r_max; ++r) {
      AtomTable table;
      const std::size_t e = table.add_bundle("E", r, 0);
      // s = t/(1-t) = t + t^2 + ...; accumulate sum_i Lambda^i s^i.
      std::vector<Integer> s(k_max + 1, 0), s_pow(k_max + 1, 0);
      for (int j = 1; j <= k_max; ++j) s[j] = 1;
      s_pow[0] = 1;
      std::vector<VirtualBundle> series(k_max + 1);
      for (int i = 0; i <= r; ++i) {
        VirtualBundle li = VirtualBundle::lambda(e, i);
        for (int j = 0; j <= k_max; ++j) {
          if (s_pow[j] != 0) series[j] += HalfLaurent(s_pow[j]) * li;
        }
        std::vector<Integer> next(k_max + 1, 0);
        for (int a = 0; a <= k_max; ++a) {
          for (int b = 0; a + b <= k_max; ++b) next[a + b] += s_pow[a] * s[b];
        }
        s_pow = std::move(next);
      }
      // Times (1 - t)^r.
      for (int rep = 0; rep < r; ++rep) {
        for (int j = k_max; j >= 1; --j) series[j] -= series[j - 1];
      }
      for (int k = 0; k <= k_max; ++k) {
        if (!(gamma_k_closed(table, k, e) == series[k])) {
          return fail("closed form differs from composition", {{"r", r}, {"k", k}});
        }
      }
    }
    return pass("r <= " + std::to_string(r_max) + ", k <= " + std::to_string(k_max));
  });
}

CheckResult check_lambda_ch(int r_max, int d_max, std::uint64_t seed) {
  return run_check("lambda-ch", [&] {
    std::mt19937_64 rng(seed);
    for (int r = 1; r <= r_max; ++r) {
      for (int d = 0; d <= d_max; ++d) {
        Layout layout{{r}, d};
        const SymSeries one = SymSeries::constant(layout, Rational(1));
        const SymSeries reduced = chern_character(r, d) - SymSeries::constant(layout, Rational(r));
        std::vector<std::vector<Rational>> root_sets;
        for (int trial = 0; trial < 3; ++trial) root_sets.push_back(random_roots(rng, r));
        for (int k = 0; k <= r; ++k) {
          const SymSeries newton = lambda_ch(k, r, d);
          SymSeries via_exp = lambda_series<SymSeries>(
              k, Integer(r), reduced, one, [](long j, const SymSeries& x) { return adams_ch(j, x); },
              [](const SymSeries& a, const SymSeries& b) { return a * b; });
          if (!(via_exp == newton)) return fail("Adams exponential differs from ch(Lambda^k)", {{"r", r}, {"D", d}, {"k", k}});
          // prod_j (1 + t e^{u_j}) at explicit roots, degree by degree.
          for (const auto& roots : root_sets) {
            std::vector<Univariate<Rational>> e(k + 1, Univariate<Rational>(d + 1, Rational(0)));
            e[0][0] = 1;
            for (const auto& u : roots) {
              const auto x = exp_series(u, d);
              for (int i = k; i >= 1; --i) {
                const auto term = uni_mul(x, e[i - 1]);
                for (int n = 0; n <= d; ++n) e[i][n] += term[n];
              }
            }
            for (int n = 0; n <= d; ++n) {
              if (newton.degree_part(n).evaluate({roots}) != e[k][n]) {
                json w{{"r", r}, {"D", d}, {"k", k}, {"degree", n}, {"roots", json::array()}};
                for (const auto& u : roots) w["roots"].push_back(u.get_str());
                return fail("product formula mismatch", w);
              }
            }
          }
        }
      }
    }
    return pass("r <= " + std::to_string(r_max) + ", D <= " + std::to_string(d_max));
  });
}

CheckResult check_gamma_generating_identity(int r_max, int d_max) {
  return run_check("gamma-generating-identity", [&] {
    for (int r = 1; r <= r_max; ++r) {
      for (int d = 0; d <= d_max; ++d) {
        if (!verify_gamma_generating_identity(r, d)) return fail("identity fails", {{"r", r}, {"D", d}});
      }
    }
    return pass("r <= " + std::to_string(r_max) + ", D <= " + std::to_string(d_max));
  });
}

CheckResult check_gamma_degree_bound(int r_max, int i_max, int d_max) {
  return run_check("gamma-degree-bound", [&] {
    for (int r = 1; r <= r_max; ++r) {
      for (int i = 0; i <= i_max; ++i) {
        for (int d = 0; d <= d_max; ++d) {
          const SymSeries s = gamma_ch_reduced(i, r, d);
          if (!s.is_zero() && s.lowest_degree() < i) {
            return fail("monomial of degree " + std::to_string(s.lowest_degree()) + " below " + std::to_string(i),
                        {{"r", r}, {"i", i}, {"D", d}});
          }
        }
      }
    }
    return pass("r <= " + std::to_string(r_max) + ", i <= " + std::to_string(i_max) + ", D <= " + std::to_string(d_max));
  });
}

CheckResult check_p_recursion(int r_max, int l_max, int cutoff) {
  return run_check("p-recursion", [&] {
    for (int r = 1; r <= r_max; ++r) {
      for (long w : {0L, 1L}) {
        AtomTable table;
        const std::size_t e = table.add_bundle("E", r, w);
        if (!verify_p_recursion(table, e, l_max, cutoff)) {
          return fail("recursion fails", {{"r", r}, {"weight", w}, {"l_max", l_max}, {"D", cutoff}});
        }
      }
    }
    return pass("r <= " + std::to_string(r_max) + ", l <= " + std::to_string(l_max));
  });
}

CheckResult check_nilpotency_constants() {
  return run_check("nilpotency-constants", [] {
    const std::vector<std::tuple<long, long, long>> expected{{1, 1, 10}, {2, 1, 736}, {1, 0, 0}};
    for (const auto& [r, m, value] : expected) {
      Integer got = n_rm_bound(r, m);
      if (got != value) return fail("got " + got.get_str(), {{"r", r}, {"m", m}, {"expected", value}});
    }
    return pass("10, 736, 0");
  });
}

CheckResult check_gamma_nilpotency(int r_max, int cutoff) {
  return run_check("gamma-nilpotency", [&] {
    int cases = 0;
    for (int r = 1; r <= r_max; ++r) {
      // Exponents n_1..n_r with sum_i i n_i just above the cutoff.
      std::vector<int> n(r, 0);
      std::function<std::optional<Outcome>(int, int)> rec = [&](int i, int weight) -> std::optional<Outcome> {
        if (i > r) {
          if (weight <= cutoff) return std::nullopt;
          ++cases;
          if (!gamma_nilpotency_check(r, n, cutoff)) return fail("product survives", {{"r", r}, {"n", n}, {"D", cutoff}});
          return std::nullopt;
        }
        for (int e = 0; weight + i * e <= cutoff + i; ++e) {
          n[i - 1] = e;
          if (auto bad = rec(i + 1, weight + i * e)) return bad;
        }
        n[i - 1] = 0;
        return std::nullopt;
      };
      if (auto bad = rec(1, 0)) return *bad;
    }
    return pass(std::to_string(cases) + " products");
  });
}

CheckResult check_cp1_localization(const json& fixture, int m_max) {
  return run_check("cp1-localization", [&] {
    for (long m = 0; m <= m_max; ++m) {
      const json w{{"m", m}};
      FixedPointData data = parse_fixed_point_data(fixture, {{"m", m}});
      PoleCheck pc = pole_cancellation_check(localized_index(data, 1));
      HalfLaurent expected;
      for (long j = 0; j <= m; ++j) expected += HalfLaurent::g_monomial(j);
      if (!pc.cancels || !(*pc.character == expected)) return fail("index is not sum_{j<=m} g^j", w);
      for (const auto& [k, c] : sym_expansion(data, -m - 5, m + 5)) {
        if (c != ((k >= 0 && k <= m) ? 1 : 0)) return fail("expansion support differs at " + std::to_string(k), w);
      }
      if (!cancellation_check(data, m)) return fail("cancellation fails at K = m", w);
      if (m >= 1 && cancellation_check(data, m - 1)) return fail("cancellation passes at K = m - 1", w);
    }
    return pass("m <= " + std::to_string(m_max));
  });
}

CheckResult check_cp2_localization(int k_max) {
  return run_check("cp2-localization", [&] {
    const json fixture = json::parse(kCp2Data);
    for (long k = 0; k <= k_max; ++k) {
      PoleCheck pc = pole_cancellation_check(localized_index(parse_fixed_point_data(fixture, {{"k", k}}), 2));
      HalfLaurent expected;
      for (long j = 0; j <= k; ++j) expected += HalfLaurent::g_monomial(j, j + 1);
      if (!pc.cancels || !(*pc.character == expected)) return fail("index differs", {{"k", k}});
    }
    return pass("k <= " + std::to_string(k_max));
  });
}

CheckResult check_localization_routes(int n, std::uint64_t seed) {
  return run_check("localization-routes", [&] {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> v(1, 3), r(0, 2), w(-2, 2);
    for (int trial = 0; trial < 10; ++trial) {
      FixedComponent c;
      c.name = "p";
      for (int i = 0; i < 2; ++i) c.normal.push_back({v(rng), r(rng)});
      c.l = w(rng);
      if ((c.l + weighted_rank(c.normal)) % 2 != 0) ++c.l;
      c.coefficient = {{w(rng), 1}, {w(rng), 2}};
      const RationalFn closed = component_contribution(c, 1);
      for (int level = 1; level <= n; ++level) {
        if (!(isolated_contribution_via_inverse(c, level) == closed)) {
          return fail("routes differ", {{"component", to_json(FixedPointData{{c}, {}})}, {"N", level}});
        }
      }
    }
    return pass("10 components, N <= " + std::to_string(n));
  });
}

CheckResult check_normal_identities(const std::vector<std::vector<NormalWeight>>& sets, const std::vector<int>& cutoffs) {
  return run_check("normal-bundle-identities", [&] {
    int cases = 0;
    for (const auto& w : sets) {
      const long s = weighted_rank(w);
      for (int d : cutoffs) {
        for (long l : {s, -s}) {
          for (int tangent : {1, 2}) {
            if (!verify_normal_bundle_identities(w, l, d, tangent)) {
              return fail("identity fails", {{"weights", weights_json(w)}, {"l", l}, {"D", d}, {"tangent_rank", tangent}});
            }
            ++cases;
          }
        }
      }
    }
    return pass(std::to_string(cases) + " cases");
  });
}

CheckResult check_circle_eta(int k_max, int samples, std::uint64_t seed, long double tolerance) {
  return run_check("circle-eta", [&] {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<long double> u(0.0L, 1.0L);
    std::vector<std::pair<long, long double>> points;
    for (long k = 1; k <= k_max; ++k) {
      for (int i = 0; i < samples;) {
        const long double t = u(rng);
        const long double kt = static_cast<long double>(k) * t;
        if (std::abs(kt - std::round(kt)) < 0.02L) continue;
        points.emplace_back(k, t);
        ++i;
      }
    }
    auto errors = parallel_map(points.size(), [&](std::size_t i) {
      return circle_eta_abel_oracle(points[i].first, points[i].second).error;
    });
    long double worst = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      worst = std::max(worst, errors[i]);
      if (!(errors[i] < tolerance)) {
        return fail("Abel oracle error " + std::to_string(static_cast<double>(errors[i])),
                    {{"k", points[i].first}, {"t", static_cast<double>(points[i].second)}});
      }
    }
    for (long k = 1; k <= k_max; ++k) {
      for (long j = 0; j < k; ++j) {
        CircleEtaValue v = circle_eta_closed(k, RootOfUnity::make(k, j));
        if (!v.in_exclusion || !v.value || v.value->rational_value() != Rational(1, 2)) {
          return fail("value on A is not 1/2", {{"k", k}, {"at", RootOfUnity::make(k, j).to_string()}});
        }
      }
      if (!aps_disc_consistency(k)) return fail("disc consistency fails", {{"k", k}});
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1e", static_cast<double>(worst));
    return pass(std::to_string(points.size()) + " points, max error " + buf);
  });
}

CheckResult check_rationality(int trials, int max_degree, std::uint64_t seed) {
  return run_check("rationality", [&] {
    auto evaluator = [](const RationalFn& f) -> RootEvaluator {
      return [f](const RootOfUnity& pt) { return evaluate_exact(f, pt); };
    };
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-4, 4), order(2, 4), small(-2, 2);
    std::size_t fewest = 0;
    for (int trial = 0; trial < trials;) {
      // Denominator: Phi_n times a quadratic with no roots on the unit circle.
      const long n = order(rng);
      poly::ZPoly den = poly::mul(poly::cyclotomic(n), poly::ZPoly{Integer(7), Integer(small(rng)), Integer(small(rng))});
      std::vector<Integer> num;
      const int num_degree = max_degree - trial % 3;
      for (int i = 0; i <= num_degree; ++i) num.push_back(coeff(rng));
      if (poly::degree(den) > max_degree) continue;
      ++trial;
      RationalFn planted(HalfLaurent::from_g_coeffs(0, num), HalfLaurent::from_g_coeffs(0, den));
      ExclusionSet a;
      a.add_order_divisors(n);
      RationalityResult r = verify_rationality(evaluator(planted), a, max_degree);
      json w{{"numerator", planted.num().to_string()}, {"denominator", planted.den().to_string()}, {"A_order", n}};
      if (!r.ok) return fail("not recovered: " + r.failure, w);
      if (!(*r.value == planted)) return fail("recovered " + r.value->to_string(), w);
      if (r.samples_used < static_cast<std::size_t>(2 * max_degree + 1)) return fail("too few samples", w);
      fewest = fewest == 0 ? r.samples_used : std::min(fewest, r.samples_used);
    }
    // A pole at primitive cube roots, with A only containing g^2 = 1.
    RationalFn bad(HalfLaurent(1), HalfLaurent(1) - HalfLaurent::g_monomial(3));
    ExclusionSet a;
    a.add_order_divisors(2);
    RationalityResult r = verify_rationality(evaluator(bad), a, max_degree);
    if (r.ok || r.failure.find("pole outside A") == std::string::npos) {
      return fail("planted pole outside A not flagged", {{"function", bad.to_string()}, {"A_order", 2}});
    }
    return pass(std::to_string(trials) + " planted, >= " + std::to_string(fewest) + " samples each; pole flagged");
  });
}

CheckResult check_q_defect_round_trip() {
  return run_check("q-defect-round-trip", [] {
    ComponentEtaData d;
    d.name = "a";
    d.weights = {{1, 1}, {2, 1}};
    d.prefactor_exp = -1;
    d.entries = {{0, 1, 1, Rational(1, 2)}, {1, 2, -1, Rational(3, 2)}, {2, 1, 1, Rational(-1)}};
    ComponentEtaData e;
    e.name = "b";
    e.weights = {{1, 2}};
    e.entries = {{1, 1, 1, Rational(1)}, {0, 1, -1, Rational(2)}};
    RationalFn total = RationalFn(HalfLaurent(3)) / RationalFn(HalfLaurent(1) - HalfLaurent::g_monomial(3));
    QDefect q = q_defect_assemble(total, {d, e}, 1);
    if (!q.denominator_divides) return fail("denominator does not divide F_N times the total's", nullptr);
    ExclusionSet a;
    a.add_order_divisors(2);
    a.add_order_divisors(3);
    RationalityResult r =
        verify_rationality([f = q.value](const RootOfUnity& pt) { return evaluate_exact(f, pt); }, a, 12);
    if (!r.ok) return fail(r.failure, {{"Q", q.value.to_string()}});
    if (!(*r.value == q.value)) return fail("recovered " + r.value->to_string(), {{"Q", q.value.to_string()}});
    return pass("Q_N = " + q.value.to_string());
  });
}

CheckResult check_gamma_ring(int triples, std::uint64_t seed) {
  return run_check("gamma-ring", [&] {
    std::mt19937_64 rng(seed);
    const auto algebras = check_algebras();
    for (std::size_t ai = 0; ai < algebras.size(); ++ai) {
      const auto& alg = algebras[ai];
      for (int i = 0; i < triples; ++i) {
        GammaElement a = random_gamma(alg, rng), b = random_gamma(alg, rng), c = random_gamma(alg, rng);
        std::string broken;
        if (!(a * b == b * a)) broken = "commutativity";
        else if (!((a * b) * c == a * (b * c))) broken = "associativity";
        else if (!(a * (b + c) == a * b + a * c)) broken = "distributivity";
        else if (!(GammaElement::one(alg) * a == a)) broken = "unit";
        if (!broken.empty()) {
          return fail(broken + " fails",
                      {{"algebra", algebra_name(ai)}, {"a", a.to_string()}, {"b", b.to_string()}, {"c", c.to_string()}});
        }
      }
    }
    return pass(std::to_string(triples) + " triples per algebra");
  });
}

CheckResult check_gamma_lambda_exponential(int pairs, std::uint64_t seed) {
  return run_check("gamma-lambda-exponential", [&] {
    std::mt19937_64 rng(seed);
    const auto algebras = check_algebras();
    for (std::size_t ai = 0; ai < algebras.size(); ++ai) {
      const auto& alg = algebras[ai];
      // Ranks lie in [-3, 3]; products of more than top/2 positive-degree
      // factors vanish, so past this index both sides are pure rank terms.
      const long k_max = alg->top_degree() / 2 + 1 + 6;
      for (int i = 0; i < pairs; ++i) {
        GammaElement a = random_gamma(alg, rng), b = random_gamma(alg, rng);
        std::vector<GammaElement> la, lb;
        for (long k = 0; k <= k_max; ++k) {
          la.push_back(lambda_gamma(k, a));
          lb.push_back(lambda_gamma(k, b));
        }
        for (long k = 0; k <= k_max; ++k) {
          GammaElement conv = GammaElement::zero(alg);
          for (long j = 0; j <= k; ++j) conv += la[j] * lb[k - j];
          if (!(lambda_gamma(k, a + b) == conv)) {
            return fail("lambda^k(x + y) differs", {{"algebra", algebra_name(ai)}, {"k", k}, {"x", a.to_string()},
                                                    {"y", b.to_string()}});
          }
        }
      }
    }
    return pass(std::to_string(pairs) + " pairs per algebra");
  });
}

CheckResult check_cs_identity(int instances, std::uint64_t seed) {
  return run_check("cs-product-identity", [&] {
    std::mt19937_64 rng(seed);
    const auto algebras = check_algebras();
    for (std::size_t ai = 0; ai < algebras.size(); ++ai) {
      const auto& alg = algebras[ai];
      const auto even = closed_basis(alg, 0);
      const auto odd = parity_basis(alg, 1);
      for (int i = 0; i < instances; ++i) {
        Form a0 = random_combination(alg, even, rng, false);
        Form b0 = random_combination(alg, even, rng, false);
        Form alpha = random_combination(alg, odd, rng, false);
        Form beta = random_combination(alg, odd, rng, false);
        if (!cs_product_identity_check(a0, a0 + alpha.d(), b0, b0 + beta.d(), alpha, beta)) {
          return fail("identity fails", {{"algebra", algebra_name(ai)}, {"a0", a0.to_string()}, {"b0", b0.to_string()},
                                         {"alpha", alpha.to_string()}, {"beta", beta.to_string()}});
        }
      }
    }
    return pass(std::to_string(instances) + " instances per algebra");
  });
}

CheckResult check_odd_chern_constant(int matrices, std::uint64_t seed) {
  return run_check("odd-chern-constant", [&] {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> entry(-3, 3), nonzero(1, 3), size(1, 3), weight(-2, 2);
    const auto algebras = check_algebras();
    for (std::size_t ai = 0; ai < algebras.size(); ++ai) {
      const auto& alg = algebras[ai];
      for (int i = 0; i < matrices; ++i) {
        // Lower unitriangular times upper triangular with nonzero diagonal.
        const int n = size(rng);
        std::vector<std::vector<Rational>> lo(n, std::vector<Rational>(n, Rational(0))), up = lo;
        for (int r = 0; r < n; ++r) {
          lo[r][r] = 1;
          up[r][r] = nonzero(rng) * (entry(rng) < 0 ? -1 : 1);
          for (int c = 0; c < r; ++c) lo[r][c] = entry(rng);
          for (int c = r + 1; c < n; ++c) up[r][c] = entry(rng);
        }
        FormMatrix f(n, std::vector<Form>(n, alg->zero()));
        json rows = json::array();
        for (int r = 0; r < n; ++r) {
          json row = json::array();
          for (int c = 0; c < n; ++c) {
            Rational x = 0;
            for (int m = 0; m < n; ++m) x += lo[r][m] * up[m][c];
            f[r][c] = alg->scalar(x);
            row.push_back(x.get_str());
          }
          rows.push_back(row);
        }
        std::vector<HalfLaurent> weights;
        for (int r = 0; r < n; ++r) weights.push_back(HalfLaurent::g_monomial(weight(rng)));
        if (!odd_chern_matrix(f, weights).is_zero()) {
          return fail("odd Chern character is nonzero", {{"algebra", algebra_name(ai)}, {"F", rows}});
        }
      }
    }
    return pass(std::to_string(matrices) + " matrices per algebra");
  });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"gamma", "lambda", "chern", "gamma-model", "localization", "eta", "all"};
  return names;
}

std::vector<CheckResult> run_suite(const std::string& suite, const SuiteOptions& opts) {
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end()) {
    throw InputError("unknown suite '" + suite + "'");
  }
  if (opts.r_max < 1 || opts.d_max < 1 || opts.n < 0) throw InputError("bounds must be at least 1");
  const int r = opts.r_max, d = opts.d_max;
  const std::uint64_t seed = opts.seed;

  std::vector<std::vector<NormalWeight>> sets;
  for (const auto& w : default_weight_sets()) {
    int top = 0;
    for (const auto& x : w) top = std::max(top, x.rank);
    if (top <= r) sets.push_back(w);
  }
  std::vector<int> cutoffs;
  for (int c = 1; c <= d; ++c) cutoffs.push_back(c);

  std::vector<std::function<CheckResult()>> checks;
  auto want = [&](const char* name) { return suite == "all" || suite == name; };
  if (want("gamma")) {
    checks.push_back([=] { return check_gamma_closed_form(r, r + 2); });
    checks.push_back([=] { return check_gamma_degree_bound(r, r, d); });
    checks.push_back([=] { return check_p_recursion(r, 8, std::min(d, 3)); });
    checks.push_back([=] { return check_gamma_nilpotency(r, d); });
    checks.push_back([] { return check_nilpotency_constants(); });
  }
  if (want("lambda")) {
    checks.push_back([=] { return check_lambda_ch(r, d, seed); });
    checks.push_back([=] { return check_unit_identity(sets, cutoffs, opts.n); });
  }
  if (want("chern")) {
    checks.push_back([=] { return check_gamma_generating_identity(r, d); });
    checks.push_back([=] { return check_normal_identities(sets, cutoffs); });
  }
  if (want("gamma-model")) {
    checks.push_back([=] { return check_gamma_ring(100, seed); });
    checks.push_back([=] { return check_gamma_lambda_exponential(10, seed + 1); });
    checks.push_back([=] { return check_cs_identity(50, seed + 2); });
    checks.push_back([=] { return check_odd_chern_constant(20, seed + 3); });
  }
  if (want("localization")) {
    checks.push_back([] { return check_cp1_localization(json::parse(kCp1Data), 10); });
    checks.push_back([] { return check_cp2_localization(4); });
    checks.push_back([=] { return check_localization_routes(std::max(opts.n, 3), seed); });
  }
  if (want("eta")) {
    checks.push_back([=] { return check_circle_eta(5, 20, seed, 1e-9L); });
    checks.push_back([=] { return check_rationality(12, 8, seed); });
    checks.push_back([] { return check_q_defect_round_trip(); });
  }
  return parallel_map(checks.size(), [&](std::size_t i) { return checks[i](); });
}

}  // namespace lambdak
