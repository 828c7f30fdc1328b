#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "lambdak/eta_engine.hpp"
#include "lambdak/gamma_model.hpp"

namespace lambdak {

enum class CheckStatus { Pass, Fail, Error };

std::string to_string(CheckStatus s);

/// Outcome of one property check. Failures carry the offending input in
/// `witness` so they can be replayed.
struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
  nlohmann::json witness;

  bool passed() const { return status == CheckStatus::Pass; }
  nlohmann::json to_json() const;
};

// Every check catches library errors and reports them as CheckStatus::Error.

/// ch_g(lambda_{-1} N*) ch_g(inverse_N) = 1 and the character product is 1,
/// for each weight set and cutoff D, with N = D when level is 0.
CheckResult check_unit_identity(const std::vector<std::vector<NormalWeight>>& sets, const std::vector<int>& cutoffs,
                                int level = 0);

/// gamma^k(E - r) closed form against the t^k coefficient of
/// lambda_{t/(1-t)}(E) (1-t)^r built by series composition, word by word.
CheckResult check_gamma_closed_form(int r_max, int k_max);

/// lambda^k(ch) by the Adams exponential formula equals ch(Lambda^k) (Newton
/// route), and both match prod_j (1 + t e^{u_j}) expanded at random rational roots.
CheckResult check_lambda_ch(int r_max, int d_max, std::uint64_t seed);

/// sum_i sigma_i(e^u) t^i (1-t)^{r-i} = sum_i sigma_i(e^u - 1) t^i.
CheckResult check_gamma_generating_identity(int r_max, int d_max);

/// Every monomial of ch(gamma^i(E - r)) has degree >= i.
CheckResult check_gamma_degree_bound(int r_max, int i_max, int d_max);

/// sum_i gamma^i (P_{l-i,+} - P_{l-i,-}) = 0, character and chern views.
CheckResult check_p_recursion(int r_max, int l_max, int cutoff);

/// n_rm_bound(1,1) = 10, n_rm_bound(2,1) = 736, n_rm_bound(1,0) = 0.
CheckResult check_nilpotency_constants();

/// gamma products of weight above the cutoff vanish.
CheckResult check_gamma_nilpotency(int r_max, int cutoff);

/// CP^1 with O(m): index sum_{j<=m} g^j, expansion support [0, m],
/// cancellation at K = m and not at K = m - 1. `fixture` is cp1_om.json.
CheckResult check_cp1_localization(const nlohmann::json& fixture, int m_max);

/// CP^2 with a fixed line: sum_{j<=k} (j+1) g^j (positive-dimensional route).
CheckResult check_cp2_localization(int k_max);

/// Isolated closed form equals the truncated-inverse route for levels 1..n.
CheckResult check_localization_routes(int n, std::uint64_t seed);

/// Normal-bundle twisting identities for the weight sets, l of both signs.
CheckResult check_normal_identities(const std::vector<std::vector<NormalWeight>>& sets, const std::vector<int>& cutoffs);

/// Closed form vs Abel oracle at `samples` random t per k (dist(kt, Z) >= 0.02),
/// exact 1/2 on A, and the disc consistency.
CheckResult check_circle_eta(int k_max, int samples, std::uint64_t seed, long double tolerance);

/// Random planted rational functions (integer coefficients, degrees <= max_degree)
/// recovered from root-of-unity samples; planted poles outside A are flagged.
CheckResult check_rationality(int trials, int max_degree, std::uint64_t seed);

/// Q_N assembled from synthetic component data is recovered by reconstruction.
CheckResult check_q_defect_round_trip();

/// Commutativity, associativity and distributivity of the star product on
/// random triples in each registered algebra.
CheckResult check_gamma_ring(int triples, std::uint64_t seed);

/// lambda^k(x + y) = sum lambda^i(x) lambda^{k-i}(y) through the nilpotency degree.
CheckResult check_gamma_lambda_exponential(int pairs, std::uint64_t seed);

/// Chern-Simons product identity on generated instances.
CheckResult check_cs_identity(int instances, std::uint64_t seed);

/// The odd Chern character of constant invertible matrices vanishes.
CheckResult check_odd_chern_constant(int matrices, std::uint64_t seed);

/// Named suites of the verify command.
struct SuiteOptions {
  int r_max = 3;
  int d_max = 4;
  /// Truncation level; 0 means N = D.
  int n = 0;
  std::uint64_t seed = 42;
};

const std::vector<std::string>& suite_names();
/// Throws InputError for an unknown suite or bounds below 1.
std::vector<CheckResult> run_suite(const std::string& suite, const SuiteOptions& opts);

/// The algebras property checks run over: torus and exact pair.
std::vector<CdgaPtr> check_algebras();

}  // namespace lambdak
