// lambdak: command-line front end to the library.
//
// Exit codes: 0 success, 1 check failure, 2 usage or schema error,
// 3 mathematical precondition violation.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lambdak/checks.hpp"
#include "lambdak/eta_engine.hpp"
#include "lambdak/lambda_engine.hpp"
#include "lambdak/localization.hpp"
#include "lambdak/reconstruct.hpp"

namespace {

using nlohmann::json;
using namespace lambdak;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPrecondition = 3;

// Abel oracle agreement required by eta-circle --oracle.
constexpr long double kOracleTolerance = 1e-9L;

struct Output {
  bool json = false;
  bool timing = false;
};

struct Report {
  std::string command;
  json parameters = json::object();
  std::vector<CheckResult> checks;
  json result = json::object();
  // Human-readable lines printed before the check lines.
  std::vector<std::string> lines;

  bool ok() const {
    for (const auto& c : checks) {
      if (!c.passed()) return false;
    }
    return true;
  }
};

int emit(const Report& r, const Output& out, double millis) {
  if (out.json) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back(c.to_json());
    json j{{"command", r.command},
           {"parameters", r.parameters},
           {"result", r.result},
           {"checks", checks},
           {"status", r.ok() ? "ok" : "fail"}};
    if (out.timing) j["timing_ms"] = millis;
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& l : r.lines) std::cout << l << "\n";
    for (const auto& c : r.checks) {
      std::cout << (c.passed() ? "PASS " : c.status == CheckStatus::Fail ? "FAIL " : "ERROR ") << c.name;
      if (!c.detail.empty()) std::cout << ": " << c.detail;
      std::cout << "\n";
      if (!c.witness.is_null()) std::cout << "  witness: " << c.witness.dump() << "\n";
    }
    if (out.timing) std::cout << "time: " << millis << " ms\n";
  }
  return r.ok() ? kExitOk : kExitCheckFailed;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::optional<CirclePoint> point_from(const std::string& at, bool generic) {
  if (!at.empty() && generic) throw InputError("--at and --generic are exclusive");
  if (!at.empty()) return CirclePoint(RootOfUnity::parse(at));
  if (generic) return CirclePoint(GenericPoint{});
  return std::nullopt;
}

// Leftover "--name value" or "--name=value" pairs become integer data parameters.
std::map<std::string, long> parse_parameters(const std::vector<std::string>& extras) {
  std::map<std::string, long> out;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& a = extras[i];
    if (a.rfind("--", 0) != 0 || a.size() < 3) throw InputError("unexpected argument '" + a + "'");
    std::string name = a.substr(2), value;
    if (auto eq = name.find('='); eq != std::string::npos) {
      value = name.substr(eq + 1);
      name = name.substr(0, eq);
    } else {
      if (i + 1 >= extras.size()) throw InputError("parameter --" + name + " needs a value");
      value = extras[++i];
    }
    try {
      std::size_t used = 0;
      long v = std::stol(value, &used);
      if (used != value.size()) throw InputError("");
      out[name] = v;
    } catch (const std::exception&) {
      throw InputError("parameter --" + name + " must be an integer, got '" + value + "'");
    }
  }
  return out;
}

std::vector<NormalWeight> parse_weights(const std::string& text) {
  std::vector<NormalWeight> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw InputError("weights are 'v:r,...', got '" + item + "'");
    try {
      std::size_t uv = 0, ur = 0;
      long v = std::stol(item.substr(0, colon), &uv);
      int r = std::stoi(item.substr(colon + 1), &ur);
      if (uv != colon || ur != item.size() - colon - 1 || r < 1) throw InputError("");
      out.push_back({v, r});
    } catch (const std::exception&) {
      throw InputError("bad weight '" + item + "'");
    }
  }
  if (out.empty()) throw InputError("no weights given");
  return out;
}

std::string factored_denominator(const std::map<long, int>& den) {
  std::string out;
  for (const auto& [v, e] : den) {
    out += v == 1 ? "(g-1)" : "(g^" + std::to_string(v) + "-1)";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

std::string point_label(const std::optional<CirclePoint>& pt) { return pt ? to_string(*pt) : "generic"; }

// ---- verify ----

struct VerifyArgs {
  std::string suite;
  SuiteOptions opts;
};

Report cmd_verify(const VerifyArgs& a) {
  Report r;
  r.command = "verify";
  r.parameters = {{"suite", a.suite},
                  {"r_max", a.opts.r_max},
                  {"d_max", a.opts.d_max},
                  {"N", a.opts.n},
                  {"seed", a.opts.seed}};
  r.checks = run_suite(a.suite, a.opts);
  std::size_t passed = 0;
  for (const auto& c : r.checks) passed += c.passed() ? 1 : 0;
  r.result = {{"passed", passed}, {"total", r.checks.size()}};
  r.lines.push_back("suite " + a.suite + " (seed " + std::to_string(a.opts.seed) + "): " + std::to_string(passed) + "/" +
                    std::to_string(r.checks.size()) + " checks passed");
  return r;
}

// ---- localize ----

struct LocalizeArgs {
  std::string input;
  std::string at;
  bool generic = false;
  int cutoff = 2;
  std::vector<std::string> extras;
};

Report cmd_localize(const LocalizeArgs& a) {
  const auto params = parse_parameters(a.extras);
  const auto pt = point_from(a.at, a.generic);
  if (a.cutoff < 1) throw InputError("--D must be at least 1");
  FixedPointData data = parse_fixed_point_data(load_json(a.input), params);

  Report r;
  r.command = "localize";
  r.parameters = {{"input", a.input}, {"at", point_label(pt)}, {"D", a.cutoff}, {"parameters", params}};
  LocalizedIndex idx = localized_index(data, a.cutoff, pt);
  PoleCheck pc = pole_cancellation_check(idx);

  json contributions = json::array();
  r.lines.push_back("value: " + idx.value.to_string());
  for (std::size_t i = 0; i < idx.contributions.size(); ++i) {
    const auto& name = data.components[i].name;
    contributions.push_back({{"component", name}, {"value", idx.contributions[i].to_string()}});
    r.lines.push_back("  " + name + ": " + idx.contributions[i].to_string());
  }
  r.result = {{"value", idx.value.to_string()}, {"contributions", contributions}, {"poles_cancel", pc.cancels}};
  if (pc.character) {
    r.result["character"] = pc.character->to_string();
    r.lines.push_back("character: " + pc.character->to_string());
  }
  if (pt) {
    if (const auto* root = std::get_if<RootOfUnity>(&*pt)) {
      const std::string v = evaluate_exact(idx.value, *root).to_string();
      r.result["value_at_point"] = v;
      r.lines.push_back("value at " + root->to_string() + ": " + v);
    }
  }
  CheckResult c;
  c.name = "pole-cancellation";
  c.status = pc.cancels ? CheckStatus::Pass : CheckStatus::Fail;
  c.detail = pc.cancels ? "Laurent polynomial" : "denominator " + idx.value.den().to_string() + " survives";
  if (!pc.cancels) c.witness = {{"input", a.input}, {"parameters", params}};
  r.checks.push_back(c);
  return r;
}

// ---- invert-lambda ----

struct InvertArgs {
  std::string weights;
  int level = 0;
  int cutoff = 2;
  std::string at;
  bool generic = false;
};

Report cmd_invert_lambda(const InvertArgs& a) {
  const auto weights = parse_weights(a.weights);
  const auto pt = point_from(a.at, a.generic);
  if (a.cutoff < 1) throw InputError("--D must be at least 1");
  const int level = a.level > 0 ? a.level : a.cutoff;
  if (a.level < 0) throw InputError("--N must be at least 1");

  TruncatedInverse inv = truncated_inverse(weights, level, pt);
  Report r;
  r.command = "invert-lambda";
  r.parameters = {{"weights", a.weights}, {"N", level}, {"D", a.cutoff}, {"at", point_label(pt)}};
  const std::string den = factored_denominator(inv.denominator());
  const std::string num = inv.numerator().to_string(inv.table());
  r.result = {{"numerator", num},
              {"numerator_terms", inv.numerator().terms().size()},
              {"denominator", den},
              {"character", inv.character().to_string()}};
  r.lines.push_back("denominator: " + den);
  r.lines.push_back("numerator: " + num);
  r.lines.push_back("character: " + inv.character().to_string());

  CheckResult c;
  c.name = "unit-identity";
  const bool ok = verify_unit_identity(weights, level, a.cutoff, pt);
  c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  c.detail = ok ? "identity verified at D = " + std::to_string(a.cutoff) : "product differs from 1";
  if (!ok) c.witness = r.parameters;
  r.checks.push_back(c);
  return r;
}

// ---- eta-circle ----

struct EtaArgs {
  long k = 0;
  std::string at;
  bool generic = false;
  std::string t;
  bool oracle = false;
};

Report cmd_eta_circle(const EtaArgs& a) {
  if (a.k < 1) throw InputError("--k must be at least 1");
  if (!a.t.empty() && (!a.at.empty() || a.generic)) throw InputError("--t excludes --at and --generic");
  std::optional<Rational> t;
  std::optional<CirclePoint> pt = point_from(a.at, a.generic);
  if (!a.t.empty()) {
    t = parse_rational(a.t);
    // g = e^{2 pi i p/q}.
    pt = CirclePoint(RootOfUnity::make(t->get_den().get_si(), Integer(t->get_num() % t->get_den()).get_si()));
  } else if (pt) {
    if (const auto* root = std::get_if<RootOfUnity>(&*pt)) t = Rational(root->k, root->n);
  }
  if (!pt) pt = CirclePoint(GenericPoint{});

  Report r;
  r.command = "eta-circle";
  r.parameters = {{"k", a.k}, {"at", point_label(pt)}, {"oracle", a.oracle}};
  CircleEtaValue v = circle_eta_closed(a.k, *pt);
  r.result = {{"function", v.function.to_string()}, {"in_exclusion", v.in_exclusion}};
  r.lines.push_back("eta: " + v.to_string());
  if (v.value) r.result["value"] = v.value->to_string();
  r.result["display"] = v.to_string();

  if (a.oracle) {
    if (!t) throw InputError("--oracle needs --t or --at");
    if (v.in_exclusion) throw PreconditionError("Abel oracle needs k t outside Z");
    AbelEstimate est = circle_eta_abel_oracle(a.k, *t);
    CheckResult c;
    c.name = "abel-oracle";
    c.status = est.error < kOracleTolerance ? CheckStatus::Pass : CheckStatus::Fail;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", static_cast<double>(est.error));
    c.detail = std::string("error ") + buf;
    if (!c.passed()) c.witness = {{"k", a.k}, {"t", t->get_str()}};
    r.result["oracle"] = {{"re", static_cast<double>(est.reduced.real())},
                          {"im", static_cast<double>(est.reduced.imag())},
                          {"error", static_cast<double>(est.error)}};
    r.checks.push_back(c);
  }
  return r;
}

// ---- reconstruct ----

struct ReconstructArgs {
  std::string input;
  std::optional<int> degree_bound;
};

CyclotomicValue parse_sample_value(const json& v, long n) {
  if (v.is_number_integer()) return CyclotomicValue(n, Rational(v.get<long>()));
  if (v.is_string()) return CyclotomicValue(n, parse_rational(v.get<std::string>()));
  if (v.is_array()) {
    CyclotomicValue out(n, Rational(0));
    for (std::size_t i = 0; i < v.size(); ++i) {
      out += CyclotomicValue::root_power(n, static_cast<long>(i)) * parse_sample_value(v[i], n);
    }
    return out;
  }
  throw InputError("sample value must be a rational or a list of power-basis coefficients");
}

// {"degree_bound": b, "exclude": [m, ...], "samples": [{"at": "n/k", "value": "p/q" | [c0, c1, ...]}]}
Report cmd_reconstruct(const ReconstructArgs& a) {
  const json j = load_json(a.input);
  Report r;
  r.command = "reconstruct";
  std::vector<Sample> samples;
  ExclusionSet excluded;
  int bound = 0;
  try {
    bound = a.degree_bound ? *a.degree_bound : j.at("degree_bound").get<int>();
    if (j.contains("exclude")) {
      for (const auto& m : j.at("exclude")) excluded.add_order_divisors(m.get<long>());
    }
    for (const auto& s : j.at("samples")) {
      RootOfUnity pt = RootOfUnity::parse(s.at("at").get<std::string>());
      samples.push_back({pt, parse_sample_value(s.at("value"), pt.n)});
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("sample file: ") + e.what());
  }
  if (bound < 0) throw InputError("degree bound must be non-negative");
  r.parameters = {{"input", a.input}, {"degree_bound", bound}, {"samples", samples.size()}};

  RationalFn f = rational_reconstruct(samples, bound);
  r.result = {{"function", f.to_string()}};
  r.lines.push_back("function: " + f.to_string());

  PoleReport poles = unit_circle_poles(f);
  json orders = json::array();
  std::vector<long> outside;
  for (long n : poles.cyclotomic_orders) {
    orders.push_back(n);
    if (!excluded.contains_all_primitive(n)) outside.push_back(n);
  }
  r.result["pole_orders"] = orders;
  CheckResult c;
  c.name = "poles-in-A";
  if (!outside.empty() || poles.other_unit_circle_roots > 0) {
    c.status = CheckStatus::Fail;
    c.detail = poles.other_unit_circle_roots > 0 ? "unit-circle poles that are not roots of unity"
                                                 : "pole at primitive " + std::to_string(outside.front()) +
                                                       "-th roots of unity outside A";
    c.witness = {{"function", f.to_string()}, {"outside_orders", outside}};
  } else {
    c.detail = "every unit-circle pole lies in A";
  }
  r.checks.push_back(c);
  return r;
}

void add_output_flags(CLI::App* cmd, Output& out) {
  cmd->add_flag("--json", out.json, "Print a JSON report");
  cmd->add_flag("--timing", out.timing, "Include wall-clock timing in the report");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact lambda-ring, localization and eta computations"};
  app.require_subcommand(1);
  Output out;

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run identity suites");
  verify->add_option("--suite", va.suite, "gamma|lambda|chern|gamma-model|localization|eta|all")->required();
  verify->add_option("--r-max", va.opts.r_max, "Largest rank")->capture_default_str();
  verify->add_option("--d-max", va.opts.d_max, "Largest chern cutoff D")->capture_default_str();
  verify->add_option("--n,--N", va.opts.n, "Truncation level (default N = D)");
  verify->add_option("--seed", va.opts.seed, "Seed of the randomized suites")->capture_default_str();
  add_output_flags(verify, out);

  LocalizeArgs la;
  auto* localize = app.add_subcommand("localize", "Localized index of fixed-point data");
  localize->add_option("input", la.input, "Fixed-point data (JSON)")->required();
  localize->add_option("--at", la.at, "Root of unity n/k");
  localize->add_flag("--generic", la.generic, "Generic point (default)");
  localize->add_option("--D,--d", la.cutoff, "Chern cutoff for positive-dimensional components")->capture_default_str();
  localize->allow_extras();
  add_output_flags(localize, out);

  InvertArgs ia;
  auto* invert = app.add_subcommand("invert-lambda", "Truncated inverse of lambda_{-1}(N*)");
  invert->add_option("--weights", ia.weights, "Normal weights v:r,...")->required();
  invert->add_option("--n,--N", ia.level, "Truncation level (default N = D)");
  invert->add_option("--D,--d", ia.cutoff, "Chern cutoff")->capture_default_str();
  invert->add_option("--at", ia.at, "Root of unity n/k");
  invert->add_flag("--generic", ia.generic, "Generic point");
  add_output_flags(invert, out);

  EtaArgs ea;
  auto* eta = app.add_subcommand("eta-circle", "Reduced eta invariant of the rotated circle");
  eta->add_option("--k", ea.k, "Rotation speed")->required();
  eta->add_option("--at", ea.at, "Root of unity n/k");
  eta->add_flag("--generic", ea.generic, "Generic point");
  eta->add_option("--t", ea.t, "Rational t, g = exp(2 pi i t)");
  eta->add_flag("--oracle", ea.oracle, "Compare with the Abel-summed series");
  add_output_flags(eta, out);

  ReconstructArgs ra;
  auto* reconstruct = app.add_subcommand("reconstruct", "Rational function from root-of-unity samples");
  reconstruct->add_option("input", ra.input, "Samples (JSON)")->required();
  reconstruct->add_option("--degree-bound", ra.degree_bound, "Overrides the file's degree_bound");
  add_output_flags(reconstruct, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    Report r;
    if (*verify) r = cmd_verify(va);
    else if (*localize) {
      la.extras = localize->remaining();
      r = cmd_localize(la);
    } else if (*invert) r = cmd_invert_lambda(ia);
    else if (*eta) r = cmd_eta_circle(ea);
    else r = cmd_reconstruct(ra);
    const double millis =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return emit(r, out, millis);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}
