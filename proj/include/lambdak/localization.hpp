#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lambdak/lambda_engine.hpp"

namespace lambdak {

struct CoefficientSummand {
  long weight = 0;
  int rank = 0;
};

/// One connected component of the fixed-point set.
struct FixedComponent {
  std::string name;
  /// Real dimension; 0 for an isolated point.
  int dim = 0;
  /// Normal summands N_v, all weights positive.
  std::vector<NormalWeight> normal;
  /// Weight of g on L over the component.
  long l = 0;
  /// Isotypic pieces of the coefficient bundle E.
  std::vector<CoefficientSummand> coefficient;
  /// -1 when the complex orientation of the normal bundle disagrees with the
  /// orientation of the manifold (an odd number of negative tangent weights).
  int orientation = 1;
  /// Chern numbers, keyed by monomials like "c1(T)*c1(L)". Alphabets are
  /// T (tangent), L, N<v> (normal summand of weight v) and E<i> (i-th coefficient summand).
  std::optional<std::map<std::string, Rational>> chern_numbers;

  int complex_dim() const { return dim / 2; }
  /// sum_v v r_v.
  long normal_weight_sum() const;
};

struct FixedPointData {
  std::vector<FixedComponent> components;
  /// User-declared extra points of A.
  std::vector<RootOfUnity> extra_excluded;
};

/// Throws PreconditionError on a parity violation and InputError on malformed data.
void validate_component(const FixedComponent& c);

/// A: every g with g^v = 1 for an active weight v, plus the declared extras.
ExclusionSet exclusion_set(const FixedPointData& data);

/// Parses the fixed-point JSON schema. Integer fields may also be strings
/// holding affine expressions in the named parameters, e.g. "m" or "2*m+1";
/// defaults come from an optional "parameters" object and are overridden by `params`.
FixedPointData parse_fixed_point_data(const nlohmann::json& j, const std::map<std::string, long>& params = {});
nlohmann::json to_json(const FixedPointData& data);

/// Contribution of one component. Isolated points use the closed form
///   orientation * g^{(l - sum v r_v)/2} (sum_w rank E_w g^w) prod_v (g^v/(g^v - 1))^{r_v};
/// positive-dimensional components integrate
///   A(T) g^{(l - sum v r_v)/2} e^{(c1 L - sum c1 N_v)/2} ch_g(inverse_N) ch_g(E)
/// against the Chern numbers, with truncation level max(cutoff, complex dimension).
/// Throws PreconditionError "point in exclusion set A" if `point` is excluded.
RationalFn component_contribution(const FixedComponent& c, int cutoff,
                                  const std::optional<CirclePoint>& point = std::nullopt);

/// Isolated contribution through the character of the level-N truncated inverse.
RationalFn isolated_contribution_via_inverse(const FixedComponent& c, int level);

struct LocalizedIndex {
  RationalFn value;
  std::vector<RationalFn> contributions;
};

LocalizedIndex localized_index(const FixedPointData& data, int cutoff,
                               const std::optional<CirclePoint>& point = std::nullopt);

/// Coefficients of g^k, kmin <= k <= kmax, after expanding every
/// (1 - g^{-v})^{-1} in powers of g^{-v}. Isolated components only.
std::map<long, Integer> sym_expansion(const FixedPointData& data, long kmin, long kmax);

/// Whether the expanded coefficients vanish for every |k| > bound. The sum of
/// the expansions is the expansion of the localized index, so this holds
/// exactly when the index is a Laurent polynomial supported in [-bound, bound].
bool cancellation_check(const FixedPointData& data, long bound, int cutoff = 0);

struct PoleCheck {
  bool cancels = false;
  /// The Laurent character when the poles cancel.
  std::optional<HalfLaurent> character;
};

PoleCheck pole_cancellation_check(const LocalizedIndex& idx);

}  // namespace lambdak
