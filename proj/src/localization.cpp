#include "lambdak/localization.hpp"

#include <algorithm>
#include <regex>
#include <set>

#include "lambdak/parallel.hpp"

namespace lambdak {

using nlohmann::json;

long FixedComponent::normal_weight_sum() const {
  long s = 0;
  for (const auto& w : normal) s += w.v * w.rank;
  return s;
}

void validate_component(const FixedComponent& c) {
  const std::string where = "component '" + c.name + "': ";
  if (c.dim < 0 || c.dim % 2 != 0) throw InputError(where + "dimension must be a non-negative even integer");
  if (c.orientation != 1 && c.orientation != -1) throw InputError(where + "orientation must be 1 or -1");
  for (const auto& w : c.normal) {
    if (w.v < 1) throw InputError(where + "normal weights must be positive");
    if (w.rank < 0) throw InputError(where + "normal ranks must be non-negative");
  }
  for (const auto& e : c.coefficient) {
    if (e.rank < 0) throw InputError(where + "coefficient ranks must be non-negative");
  }
  if ((c.normal_weight_sum() + c.l) % 2 != 0) throw PreconditionError(where + "parity violation: sum v r_v + l is odd");
  if (c.dim > 0) {
    std::set<long> seen;
    for (const auto& w : c.normal) {
      if (!seen.insert(w.v).second) throw InputError(where + "repeated normal weight on a positive-dimensional component");
    }
  }
}

ExclusionSet exclusion_set(const FixedPointData& data) {
  ExclusionSet a;
  for (const auto& c : data.components) {
    for (const auto& w : c.normal) {
      if (w.rank > 0) a.add_order_divisors(w.v);
    }
  }
  for (const auto& p : data.extra_excluded) a.add(p);
  return a;
}

namespace {

// a*name + b terms, e.g. "2*m+1" or "-m".
long eval_affine(const std::string& text, const std::map<std::string, long>& params) {
  static const std::regex term(R"(\s*([+-]?)\s*(?:(\d+)\s*\*?\s*)?([A-Za-z_]\w*)?\s*)");
  long total = 0;
  std::size_t pos = 0;
  bool any = false;
  while (pos < text.size()) {
    std::smatch m;
    std::string rest = text.substr(pos);
    if (!std::regex_search(rest, m, term, std::regex_constants::match_continuous) || m.length(0) == 0) {
      throw InputError("cannot parse integer expression '" + text + "'");
    }
    if (!m[2].matched && !m[3].matched) throw InputError("cannot parse integer expression '" + text + "'");
    if (any && !m[1].matched) throw InputError("cannot parse integer expression '" + text + "'");
    long value = m[2].matched ? std::stol(m[2].str()) : 1;
    if (m[3].matched) {
      auto it = params.find(m[3].str());
      if (it == params.end()) throw InputError("unknown parameter '" + m[3].str() + "'");
      value *= it->second;
    }
    total += m[1].str() == "-" ? -value : value;
    pos += static_cast<std::size_t>(m.length(0));
    any = true;
  }
  if (!any) throw InputError("empty integer expression");
  return total;
}

long get_int(const json& obj, const char* key, const std::map<std::string, long>& params,
             std::optional<long> fallback = std::nullopt) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw InputError(std::string("missing field '") + key + "'");
  }
  const json& v = obj.at(key);
  if (v.is_number_integer()) return v.get<long>();
  if (v.is_string()) return eval_affine(v.get<std::string>(), params);
  throw InputError(std::string("field '") + key + "' must be an integer");
}

// Integer, "p/q", or an integer expression in the parameters.
Rational get_rational(const json& v, const std::map<std::string, long>& params) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) {
    const std::string text = v.get<std::string>();
    if (text.find('/') != std::string::npos) return parse_rational(text);
    return Rational(eval_affine(text, params));
  }
  throw InputError("Chern numbers must be integers, \"p/q\" strings or parameter expressions");
}

// Names of the alphabets of a positive-dimensional component, in layout order.
struct ComponentLayout {
  Layout layout;
  std::vector<std::string> names;
  std::vector<NormalWeight> merged_normal;
};

ComponentLayout component_layout(const FixedComponent& c, int cutoff) {
  ComponentLayout out;
  out.layout.cutoff = cutoff;
  out.layout.ranks = {c.complex_dim(), 1};
  out.names = {"T", "L"};
  std::map<long, int> merged;
  for (const auto& w : c.normal) {
    if (w.rank > 0) merged[w.v] += w.rank;
  }
  for (const auto& [v, r] : merged) {
    out.merged_normal.push_back({v, r});
    out.layout.ranks.push_back(r);
    out.names.push_back("N" + std::to_string(v));
  }
  for (std::size_t i = 0; i < c.coefficient.size(); ++i) {
    out.layout.ranks.push_back(c.coefficient[i].rank);
    out.names.push_back("E" + std::to_string(i));
  }
  return out;
}

// Parses "c1(T)^2*c1(L)" into a monomial key of the component layout.
EquivSymSeries::Key parse_chern_monomial(const std::string& text, const ComponentLayout& cl) {
  static const std::regex factor(R"(\s*c(\d+)\(([A-Za-z]\w*)\)(?:\^(\d+))?\s*)");
  std::vector<int> offsets;
  int total = 0;
  for (int r : cl.layout.ranks) {
    offsets.push_back(total);
    total += r;
  }
  EquivSymSeries::Key key(static_cast<std::size_t>(total), 0);
  std::size_t start = 0;
  while (true) {
    std::size_t star = text.find('*', start);
    std::string part = text.substr(start, star == std::string::npos ? std::string::npos : star - start);
    std::smatch m;
    if (!std::regex_match(part, m, factor)) throw InputError("cannot parse Chern monomial '" + text + "'");
    int index = std::stoi(m[1].str());
    auto it = std::find(cl.names.begin(), cl.names.end(), m[2].str());
    if (it == cl.names.end()) throw InputError("unknown alphabet '" + m[2].str() + "' in '" + text + "'");
    std::size_t a = static_cast<std::size_t>(it - cl.names.begin());
    if (index < 1 || index > cl.layout.ranks[a]) throw InputError("Chern class out of range in '" + text + "'");
    key[static_cast<std::size_t>(offsets[a] + index - 1)] += m[3].matched ? std::stoi(m[3].str()) : 1;
    if (star == std::string::npos) break;
    start = star + 1;
  }
  return key;
}

std::string chern_monomial_name(const EquivSymSeries::Key& key, const ComponentLayout& cl) {
  std::string out;
  std::size_t pos = 0;
  for (std::size_t a = 0; a < cl.names.size(); ++a) {
    for (int i = 1; i <= cl.layout.ranks[a]; ++i, ++pos) {
      if (key[pos] == 0) continue;
      if (!out.empty()) out += "*";
      out += "c" + std::to_string(i) + "(" + cl.names[a] + ")";
      if (key[pos] > 1) out += "^" + std::to_string(key[pos]);
    }
  }
  return out.empty() ? "1" : out;
}

RationalFn isolated_closed_form(const FixedComponent& c) {
  HalfLaurent e_char;
  for (const auto& e : c.coefficient) e_char += HalfLaurent::g_monomial(e.weight, e.rank);
  HalfLaurent num = HalfLaurent::g_monomial((c.l - c.normal_weight_sum()) / 2, c.orientation) * e_char;
  HalfLaurent den(1);
  for (const auto& w : c.normal) {
    num *= HalfLaurent::g_monomial(w.v * w.rank);
    den *= (HalfLaurent::g_monomial(w.v) - HalfLaurent(1)).pow(w.rank);
  }
  return RationalFn(num, den);
}

RationalFn integrate_component(const FixedComponent& c, int cutoff) {
  if (!c.chern_numbers) throw InputError("component '" + c.name + "': missing integration functional (chern_numbers)");
  const int d = c.complex_dim();
  ComponentLayout cl = component_layout(c, d);
  const Layout& layout = cl.layout;
  const std::size_t first_normal = 2;
  const std::size_t first_e = first_normal + cl.merged_normal.size();

  std::map<EquivSymSeries::Key, Rational> functional;
  for (const auto& [name, value] : *c.chern_numbers) {
    EquivSymSeries::Key k = parse_chern_monomial(name, cl);
    if (EquivSymSeries(layout).key_degree(k) != d) {
      throw InputError("component '" + c.name + "': Chern monomial '" + name + "' is not of top degree");
    }
    if (!functional.emplace(k, value).second) throw InputError("duplicate Chern monomial '" + name + "'");
  }

  EquivSymSeries integrand = multiplicative_series(layout, 0, to_equivariant(a_hat_factor(d)));
  EquivSymSeries c1_normal(layout);
  for (std::size_t i = 0; i < cl.merged_normal.size(); ++i) c1_normal += EquivSymSeries::variable(layout, first_normal + i, 1);
  integrand *= RationalFn(HalfLaurent::g_monomial((c.l - c.normal_weight_sum()) / 2, c.orientation)) *
               (RationalFn(Rational(1, 2)) * (EquivSymSeries::variable(layout, 1, 1) - c1_normal)).exp();
  if (!cl.merged_normal.empty()) {
    TruncatedInverse inv(cl.merged_normal, std::max({cutoff, d, 1}));
    std::vector<std::size_t> map;
    for (std::size_t i = 0; i < cl.merged_normal.size(); ++i) map.push_back(first_normal + i);
    integrand *= inv.chern(d).embed(layout, map);
  }
  EquivSymSeries e_ch(layout);
  for (std::size_t i = 0; i < c.coefficient.size(); ++i) {
    const auto& e = c.coefficient[i];
    e_ch += ch_g_bundle(e.weight, e.rank, d).embed(layout, {first_e + i});
  }
  integrand *= e_ch;

  RationalFn total;
  const EquivSymSeries top = integrand.degree_part(d);
  for (const auto& [k, coeff] : top.terms()) {
    auto it = functional.find(k);
    if (it == functional.end()) {
      throw InputError("component '" + c.name + "': missing Chern number for " + chern_monomial_name(k, cl));
    }
    total += RationalFn(it->second) * coeff;
  }
  return total;
}

}  // namespace

FixedPointData parse_fixed_point_data(const json& j, const std::map<std::string, long>& params) {
  try {
    if (!j.is_object()) throw InputError("fixed-point data must be a JSON object");
    std::map<std::string, long> env;
    if (j.contains("parameters")) {
      for (const auto& [name, v] : j.at("parameters").items()) {
        if (!v.is_number_integer()) throw InputError("parameter '" + name + "' must be an integer");
        env[name] = v.get<long>();
      }
    }
    for (const auto& [name, v] : params) env[name] = v;

    FixedPointData data;
    if (!j.contains("components") || !j.at("components").is_array()) throw InputError("missing 'components' array");
    for (const auto& jc : j.at("components")) {
      FixedComponent c;
      c.name = jc.value("name", std::string("component") + std::to_string(data.components.size()));
      c.dim = static_cast<int>(get_int(jc, "dim", env, 0));
      c.l = get_int(jc, "l", env);
      c.orientation = static_cast<int>(get_int(jc, "orientation", env, 1));
      for (const auto& jn : jc.value("normal", json::array())) {
        c.normal.push_back({get_int(jn, "v", env), static_cast<int>(get_int(jn, "rank", env))});
      }
      for (const auto& je : jc.value("E", json::array())) {
        c.coefficient.push_back({get_int(je, "weight", env), static_cast<int>(get_int(je, "rank", env))});
      }
      if (jc.contains("chern_numbers") && !jc.at("chern_numbers").is_null()) {
        std::map<std::string, Rational> numbers;
        for (const auto& [k, v] : jc.at("chern_numbers").items()) numbers[k] = get_rational(v, env);
        c.chern_numbers = std::move(numbers);
      }
      validate_component(c);
      data.components.push_back(std::move(c));
    }
    for (const auto& jx : j.value("exclude", json::array())) {
      data.extra_excluded.push_back(RootOfUnity::make(get_int(jx, "n", env), get_int(jx, "k", env)));
    }
    return data;
  } catch (const json::exception& e) {
    throw InputError(std::string("schema violation: ") + e.what());
  }
}

json to_json(const FixedPointData& data) {
  json out;
  out["components"] = json::array();
  for (const auto& c : data.components) {
    json jc{{"name", c.name}, {"dim", c.dim}, {"l", c.l}, {"orientation", c.orientation}};
    jc["normal"] = json::array();
    for (const auto& w : c.normal) jc["normal"].push_back({{"v", w.v}, {"rank", w.rank}});
    jc["E"] = json::array();
    for (const auto& e : c.coefficient) jc["E"].push_back({{"weight", e.weight}, {"rank", e.rank}});
    if (c.chern_numbers) {
      jc["chern_numbers"] = json::object();
      for (const auto& [k, v] : *c.chern_numbers) jc["chern_numbers"][k] = to_string(v);
    }
    out["components"].push_back(std::move(jc));
  }
  out["exclude"] = json::array();
  for (const auto& p : data.extra_excluded) out["exclude"].push_back({{"n", p.n}, {"k", p.k}});
  return out;
}

RationalFn component_contribution(const FixedComponent& c, int cutoff, const std::optional<CirclePoint>& point) {
  validate_component(c);
  if (point) check_normal_weights(c.normal, point);
  return c.dim == 0 ? isolated_closed_form(c) : integrate_component(c, cutoff);
}

RationalFn isolated_contribution_via_inverse(const FixedComponent& c, int level) {
  validate_component(c);
  if (c.dim != 0) throw PreconditionError("component '" + c.name + "' is not isolated");
  HalfLaurent e_char;
  for (const auto& e : c.coefficient) e_char += HalfLaurent::g_monomial(e.weight, e.rank);
  RationalFn prefactor(HalfLaurent::g_monomial((c.l - c.normal_weight_sum()) / 2, c.orientation) * e_char);
  return prefactor * truncated_inverse(c.normal, level).character();
}

LocalizedIndex localized_index(const FixedPointData& data, int cutoff, const std::optional<CirclePoint>& point) {
  if (point && exclusion_set(data).contains(*point)) throw PreconditionError("point in exclusion set A");
  LocalizedIndex idx;
  idx.contributions = parallel_map(data.components.size(), [&](std::size_t i) {
    return component_contribution(data.components[i], cutoff, point);
  });
  for (const auto& c : idx.contributions) idx.value += c;
  return idx;
}

std::map<long, Integer> sym_expansion(const FixedPointData& data, long kmin, long kmax) {
  if (kmin > kmax) throw InputError("empty k range");
  std::map<long, Integer> out;
  for (long k = kmin; k <= kmax; ++k) out[k] = 0;
  for (const auto& c : data.components) {
    validate_component(c);
    if (c.dim != 0) throw PreconditionError("sym_expansion supports isolated components only");
    const long shift = (c.l - c.normal_weight_sum()) / 2;
    long top = shift;
    for (const auto& e : c.coefficient) top = std::max(top, shift + e.weight);
    if (top < kmin) continue;
    // prod_v (1 - x^v)^{-r_v} in x = g^{-1}, up to x^{top - kmin}.
    const std::size_t order = static_cast<std::size_t>(top - kmin);
    std::vector<Integer> series(order + 1, 0);
    series[0] = 1;
    for (const auto& w : c.normal) {
      for (int rep = 0; rep < w.rank; ++rep) {
        for (std::size_t i = static_cast<std::size_t>(w.v); i <= order; ++i) series[i] += series[i - static_cast<std::size_t>(w.v)];
      }
    }
    for (const auto& e : c.coefficient) {
      const long lead = shift + e.weight;
      for (long k = std::max(kmin, lead - static_cast<long>(order)); k <= std::min(kmax, lead); ++k) {
        out[k] += Integer(c.orientation * e.rank) * series[static_cast<std::size_t>(lead - k)];
      }
    }
  }
  return out;
}

bool cancellation_check(const FixedPointData& data, long bound, int cutoff) {
  if (bound < 0) throw InputError("bound must be non-negative");
  PoleCheck pc = pole_cancellation_check(localized_index(data, cutoff));
  if (!pc.cancels) return false;
  const HalfLaurent& ch = *pc.character;
  if (ch.is_zero()) return true;
  // q-exponents are twice the g-exponents.
  return ch.low_q() >= -2 * bound && ch.high_q() <= 2 * bound;
}

PoleCheck pole_cancellation_check(const LocalizedIndex& idx) {
  PoleCheck out;
  out.cancels = idx.value.is_laurent() && idx.value.num().is_integral();
  if (out.cancels) out.character = idx.value.num();
  return out;
}

}  // namespace lambdak
