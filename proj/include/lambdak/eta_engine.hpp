#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "lambdak/localization.hpp"
#include "lambdak/reconstruct.hpp"

namespace lambdak {

/// Reduced eta invariant of the circle rotated at speed k: 1/(1 - g^k) off
/// A = {g^k = 1}, exactly 1/2 on A. At a root of unity off A the value is
/// also given exactly.
struct CircleEtaValue {
  bool in_exclusion = false;
  RationalFn function;
  std::optional<CyclotomicValue> value;

  std::complex<long double> numeric(long double t) const;
  std::string to_string() const;
};

CircleEtaValue circle_eta_closed(long k, const CirclePoint& pt);

struct AbelEstimate {
  /// Extrapolated reduced eta, (Abel limit + 1)/2.
  std::complex<long double> reduced;
  std::complex<long double> closed;
  long double error = 0;
};

/// epsilon_j = 2^{-8-j}, j = 0..6.
std::vector<long double> default_abel_schedule();

/// Abel-regularized sum_{n>=1} (g^{nk} - g^{-nk}) r^n at r = 1 - epsilon, summed
/// term by term, then extrapolated to epsilon = 0 by Richardson (Neville) and reduced.
/// Throws PreconditionError when k t is an integer.
AbelEstimate circle_eta_abel_oracle(long k, long double t, const std::vector<long double>& schedule = default_abel_schedule());
AbelEstimate circle_eta_abel_oracle(long k, const Rational& t, const std::vector<long double>& schedule = default_abel_schedule());

/// The disc's single fixed point (normal weight k, tangent weight -k in the
/// positive-weight convention) contributes 1/(1 - g^k); the APS index of the
/// disc vanishes. Checks closed form == contribution - 0, symbolically and, at a
/// root of unity, exactly there. Throws PreconditionError on A.
bool aps_disc_consistency(long k, const std::optional<CirclePoint>& pt = std::nullopt);

struct EtaEntry {
  long k = 0;
  long v = 0;
  int sign = 1;
  Rational eta;
};

/// Reduced eta data of one fixed component: eta values of xi_{k,+-} (x) E_v.
struct ComponentEtaData {
  std::string name;
  /// (l - sum v r_v)/2.
  long prefactor_exp = 0;
  std::vector<EtaEntry> entries;
  std::vector<NormalWeight> weights;
  /// Real dimension, for the level threshold.
  int dim = 0;
};

/// g^{prefactor} sum_{k,v} g^{k+v} (eta_+ - eta_-).
RationalFn eta_component_sum(const ComponentEtaData& d);

struct QDefect {
  RationalFn value;
  RationalFn component_part;
  int level = 0;
  /// sup over components of n_rm_bound(r_v, dim).
  Integer threshold;
  /// prod_v (g^v - 1)^{max r_v + N}.
  HalfLaurent f_n;
  bool denominator_divides = false;
  std::vector<std::string> warnings;
};

/// Q_N = eta_total - sum_a prod_v (g^v - 1)^{-r_v - N} eta_component_sum(d_a).
/// A level at or below the threshold only produces a warning.
QDefect q_defect_assemble(const RationalFn& eta_total, const std::vector<ComponentEtaData>& components, int level,
                          const std::optional<CirclePoint>& pt = std::nullopt);

struct EtaDataFile {
  std::vector<ComponentEtaData> components;
  int level = 1;
};

/// Parses {"components":[{"name","prefactor_exp" or "l","entries":[{"k","v","sign","eta"}],
/// "weights":[{"v","rank"}],"dim"}],"N"}. Throws InputError on schema violations and
/// PreconditionError on parity violations.
EtaDataFile parse_eta_data(const nlohmann::json& j);

/// Where the poles of a reduced rational function sit on the unit circle.
struct PoleReport {
  /// Orders n with Phi_n dividing the denominator.
  std::vector<long> cyclotomic_orders;
  /// Number of distinct unit-circle roots that are not roots of unity.
  long other_unit_circle_roots = 0;
};

PoleReport unit_circle_poles(const RationalFn& f);

struct RationalityResult {
  bool ok = false;
  std::optional<RationalFn> value;
  std::string failure;
  std::size_t samples_used = 0;
};

using RootEvaluator = std::function<CyclotomicValue(const RootOfUnity&)>;

/// Samples f at roots of unity of increasing order outside A (2 b + 1 + extra
/// points), reconstructs, and checks integral powers, integer coefficients and
/// that every unit-circle pole lies in A. An evaluator PreconditionError at a
/// sample point counts as a pole outside A.
RationalityResult verify_rationality(const RootEvaluator& f, const ExclusionSet& a, int degree_bound, int extra = 2);

}  // namespace lambdak
