#include "lambdak/eta_engine.hpp"

#include <cmath>
#include <numbers>

namespace lambdak {

using nlohmann::json;

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

RationalFn circle_function(long k) {
  return RationalFn(HalfLaurent(1), HalfLaurent(1) - HalfLaurent::g_monomial(k));
}

bool kt_integral(long k, const RootOfUnity& pt) { return (k * pt.k) % pt.n == 0; }

// Low g-exponent and coefficients (ascending) of an integral HalfLaurent.
std::pair<long, poly::ZPoly> to_g_poly(const HalfLaurent& p) {
  if (!p.is_integral()) throw PreconditionError("half-integral powers of g");
  if (p.is_zero()) return {0, {}};
  long low = p.low_q() / 2;
  poly::ZPoly out;
  for (long q = p.low_q(); q <= p.high_q(); q += 2) out.push_back(p.coeff_q(q));
  poly::trim(out);
  return {low, out};
}

// Number of sign changes of a Sturm sequence at x.
int sign_changes(const std::vector<poly::QPoly>& seq, const Rational& x) {
  int changes = 0;
  int last = 0;
  for (const auto& p : seq) {
    Rational v = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
    int s = sgn(v);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

poly::QPoly derivative(const poly::QPoly& p) {
  poly::QPoly out;
  for (std::size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * Rational(static_cast<long>(i)));
  poly::trim(out);
  return out;
}

// Distinct real roots of h in (a, b].
long count_real_roots(const poly::QPoly& h, const Rational& a, const Rational& b) {
  if (poly::degree(h) < 1) return 0;
  std::vector<poly::QPoly> seq{h, derivative(h)};
  while (poly::degree(seq.back()) >= 1) {
    poly::QPoly quot, rem;
    poly::divmod(seq[seq.size() - 2], seq.back(), quot, rem);
    if (rem.empty()) break;
    for (auto& c : rem) c = -c;
    seq.push_back(rem);
  }
  return sign_changes(seq, a) - sign_changes(seq, b);
}

// Neville extrapolation of (x_i, y_i) to x = 0.
std::complex<long double> extrapolate_to_zero(const std::vector<long double>& x, std::vector<std::complex<long double>> y) {
  const std::size_t n = x.size();
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t i = 0; i + m < n; ++i) {
      y[i] = (x[i + m] * y[i] - x[i] * y[i + 1]) / (x[i + m] - x[i]);
    }
  }
  return y[0];
}

std::complex<long double> abel_partial(long k, long double t, long double eps) {
  const long double r = 1.0L - eps;
  const long double theta = 2.0L * kPi * static_cast<long double>(k) * t;
  // sum_n (z^n - conj(z)^n) r^n = sum_n 2 i sin(n theta) r^n, by the rotation recurrence.
  const std::complex<long double> step = std::polar(r, theta);
  std::complex<long double> w = step;
  long double sum = 0;
  long double rn = r;
  for (long n = 1; rn > 1e-24L; ++n) {
    sum += w.imag();
    w *= step;
    rn *= r;
    // Renormalize the modulus drift every so often.
    if (n % 4096 == 0) w = std::polar(rn, std::arg(w));
  }
  return {0.0L, 2.0L * sum};
}

}  // namespace

std::complex<long double> CircleEtaValue::numeric(long double t) const {
  if (value) return value->to_complex();
  if (in_exclusion) return 0.5L;
  return function.evaluate_at_t(t);
}

std::string CircleEtaValue::to_string() const {
  if (in_exclusion) return "1/2";
  if (value) return value->to_string();
  return function.to_string();
}

CircleEtaValue circle_eta_closed(long k, const CirclePoint& pt) {
  if (k < 1) throw InputError("rotation speed k must be positive");
  CircleEtaValue out;
  out.function = circle_function(k);
  if (const auto* root = std::get_if<RootOfUnity>(&pt)) {
    if (kt_integral(k, *root)) {
      out.in_exclusion = true;
      out.value = CyclotomicValue(root->n, Rational(1, 2));
    } else {
      out.value = evaluate_exact(out.function, *root);
    }
  }
  return out;
}

std::vector<long double> default_abel_schedule() {
  std::vector<long double> eps;
  for (int j = 0; j <= 6; ++j) eps.push_back(std::ldexp(1.0L, -8 - j));
  return eps;
}

AbelEstimate circle_eta_abel_oracle(long k, long double t, const std::vector<long double>& schedule) {
  if (k < 1) throw InputError("rotation speed k must be positive");
  if (schedule.size() < 2) throw InputError("epsilon schedule needs at least two points");
  long double kt = static_cast<long double>(k) * t;
  if (std::abs(kt - std::round(kt)) < 1e-15L) throw PreconditionError("point in A; use the g in A branch (value 1/2)");
  std::vector<std::complex<long double>> values;
  for (long double eps : schedule) {
    if (!(eps > 0 && eps < 1)) throw InputError("epsilon must lie in (0, 1)");
    values.push_back(abel_partial(k, t, eps));
  }
  AbelEstimate out;
  out.reduced = (extrapolate_to_zero(schedule, values) + 1.0L) / 2.0L;
  out.closed = 1.0L / (1.0L - std::polar(1.0L, 2.0L * kPi * kt));
  out.error = std::abs(out.reduced - out.closed);
  return out;
}

AbelEstimate circle_eta_abel_oracle(long k, const Rational& t, const std::vector<long double>& schedule) {
  Rational kt = Rational(k) * t;
  kt.canonicalize();
  if (kt.get_den() == 1) throw PreconditionError("point in A; use the g in A branch (value 1/2)");
  return circle_eta_abel_oracle(k, static_cast<long double>(t.get_d()) + 0.0L, schedule);
}

bool aps_disc_consistency(long k, const std::optional<CirclePoint>& pt) {
  if (k < 1) throw InputError("rotation speed k must be positive");
  FixedComponent origin;
  origin.name = "disc origin";
  origin.normal = {{k, 1}};
  origin.l = -k;
  origin.orientation = -1;
  origin.coefficient = {{0, 1}};
  const RationalFn aps_index(0);  // no kernel, no cokernel
  RationalFn rhs = component_contribution(origin, 1) - aps_index;
  CircleEtaValue lhs = circle_eta_closed(k, pt.value_or(CirclePoint(GenericPoint{})));
  if (lhs.in_exclusion) throw PreconditionError("point in exclusion set A");
  if (!(lhs.function == rhs)) return false;
  if (lhs.value) return *lhs.value == evaluate_exact(rhs, std::get<RootOfUnity>(*pt));
  return true;
}

RationalFn eta_component_sum(const ComponentEtaData& d) {
  RationalFn out;
  for (const auto& e : d.entries) {
    if (e.k < 0) throw InputError("eta entries need k >= 0");
    if (e.sign != 1 && e.sign != -1) throw InputError("eta entry sign must be + or -");
    Rational c = e.sign > 0 ? e.eta : Rational(-e.eta);
    out += RationalFn(c) * RationalFn(HalfLaurent::g_monomial(d.prefactor_exp + e.k + e.v));
  }
  return out;
}

QDefect q_defect_assemble(const RationalFn& eta_total, const std::vector<ComponentEtaData>& components, int level,
                          const std::optional<CirclePoint>& pt) {
  if (level < 1) throw InputError("level N must be at least 1");
  QDefect out;
  out.level = level;
  out.threshold = 0;
  std::map<long, int> max_rank;
  for (const auto& c : components) {
    check_normal_weights(c.weights, pt);
    std::map<long, int> ranks;
    for (const auto& w : c.weights) {
      if (w.rank > 0) ranks[w.v] += w.rank;
    }
    HalfLaurent f(1);
    for (const auto& [v, r] : ranks) {
      f *= (HalfLaurent::g_monomial(v) - HalfLaurent(1)).pow(r + level);
      max_rank[v] = std::max(max_rank[v], r);
      Integer bound = n_rm_bound(r, c.dim);
      if (bound > out.threshold) out.threshold = bound;
    }
    out.component_part += eta_component_sum(c) / RationalFn(f);
  }
  if (pt && vanishes_at(eta_total.den(), *pt)) throw PreconditionError("point in exclusion set A");
  out.f_n = HalfLaurent(1);
  for (const auto& [v, r] : max_rank) out.f_n *= (HalfLaurent::g_monomial(v) - HalfLaurent(1)).pow(r + level);
  // Rational eta values leave a constant in the denominator.
  out.denominator_divides = (RationalFn(out.f_n) * out.component_part).den().is_constant();
  if (Integer(level) <= out.threshold) {
    out.warnings.push_back("level N = " + std::to_string(level) + " does not exceed the threshold " +
                           out.threshold.get_str());
  }
  out.value = eta_total - out.component_part;
  return out;
}

EtaDataFile parse_eta_data(const json& j) {
  try {
    EtaDataFile out;
    if (!j.is_object() || !j.contains("components") || !j.at("components").is_array()) {
      throw InputError("eta data needs a 'components' array");
    }
    out.level = j.value("N", 1);
    for (const auto& jc : j.at("components")) {
      ComponentEtaData c;
      c.name = jc.value("name", std::string("component"));
      c.dim = jc.value("dim", 0);
      for (const auto& jw : jc.value("weights", json::array())) {
        c.weights.push_back({jw.at("v").get<long>(), jw.at("rank").get<int>()});
      }
      check_normal_weights(c.weights, std::nullopt);
      long sum = 0;
      for (const auto& w : c.weights) sum += w.v * w.rank;
      if (jc.contains("prefactor_exp")) {
        c.prefactor_exp = jc.at("prefactor_exp").get<long>();
      } else if (jc.contains("l")) {
        long l = jc.at("l").get<long>();
        if ((l + sum) % 2 != 0) throw PreconditionError("component '" + c.name + "': parity violation");
        c.prefactor_exp = (l - sum) / 2;
      } else {
        throw InputError("component '" + c.name + "' needs 'prefactor_exp' or 'l'");
      }
      for (const auto& je : jc.value("entries", json::array())) {
        EtaEntry e;
        e.k = je.at("k").get<long>();
        e.v = je.at("v").get<long>();
        std::string sign = je.at("sign").get<std::string>();
        if (sign != "+" && sign != "-") throw InputError("eta entry sign must be \"+\" or \"-\"");
        e.sign = sign == "+" ? 1 : -1;
        const json& eta = je.at("eta");
        e.eta = eta.is_number_integer() ? Rational(eta.get<long>()) : parse_rational(eta.get<std::string>());
        if (e.k < 0) throw InputError("eta entries need k >= 0");
        c.entries.push_back(e);
      }
      out.components.push_back(std::move(c));
    }
    return out;
  } catch (const json::exception& e) {
    throw InputError(std::string("schema violation: ") + e.what());
  }
}

PoleReport unit_circle_poles(const RationalFn& f) {
  PoleReport out;
  poly::ZPoly den = to_g_poly(f.den()).second;
  // Drop factors of g.
  std::size_t zeros = 0;
  while (zeros < den.size() && den[zeros] == 0) ++zeros;
  den.erase(den.begin(), den.begin() + static_cast<long>(zeros));
  poly::ZPoly reversed(den.rbegin(), den.rend());
  poly::ZPoly rest = poly::gcd(den, reversed);
  // Cyclotomic factors: phi(n) <= deg forces n <= 2 deg^2.
  const long deg = poly::degree(rest);
  for (long n = 1; deg >= 1 && n <= 2 * deg * deg + 2; ++n) {
    if (euler_phi(n) > poly::degree(rest)) continue;
    poly::ZPoly phi = poly::cyclotomic(n);
    bool found = false;
    while (auto q = poly::exact_div(rest, phi)) {
      rest = *q;
      found = true;
    }
    if (found) out.cyclotomic_orders.push_back(n);
  }
  const long m2 = poly::degree(rest);
  if (m2 < 1) return out;
  // What is left has no roots of unity, its roots are closed under z -> 1/z,
  // so it is reciprocal of even degree: rest(x) = x^m h(x + 1/x).
  if (m2 % 2 != 0) throw Error("unexpected odd-degree reciprocal factor");
  for (long i = 0; i <= m2; ++i) {
    if (rest[static_cast<std::size_t>(i)] != rest[static_cast<std::size_t>(m2 - i)]) {
      throw Error("unexpected non-reciprocal factor");
    }
  }
  const long m = m2 / 2;
  // x^j + x^{-j} = D_j(y) with D_0 = 2, D_1 = y, D_{j+1} = y D_j - D_{j-1}.
  std::vector<poly::QPoly> dickson{{Rational(2)}, {Rational(0), Rational(1)}};
  for (long j = 2; j <= m; ++j) {
    poly::QPoly next = poly::sub(poly::mul(poly::QPoly{Rational(0), Rational(1)}, dickson[j - 1]), dickson[j - 2]);
    dickson.push_back(next);
  }
  poly::QPoly h{Rational(rest[static_cast<std::size_t>(m)])};
  for (long j = 1; j <= m; ++j) {
    poly::QPoly term = dickson[static_cast<std::size_t>(j)];
    for (auto& c : term) c *= Rational(rest[static_cast<std::size_t>(m + j)]);
    h = poly::add(h, term);
  }
  // Unit-circle roots other than +-1 are real y in (-2, 2).
  out.other_unit_circle_roots = count_real_roots(h, Rational(-2), Rational(2));
  return out;
}

RationalityResult verify_rationality(const RootEvaluator& f, const ExclusionSet& a, int degree_bound, int extra) {
  if (degree_bound < 0) throw InputError("degree bound must be non-negative");
  RationalityResult out;
  const std::size_t wanted = static_cast<std::size_t>(2 * degree_bound + 1 + std::max(extra, 0));
  std::vector<Sample> samples;
  for (long n = 1; samples.size() < wanted; ++n) {
    for (long k = 0; k < n && samples.size() < wanted; ++k) {
      if (std::gcd(k, n) != 1) continue;
      RootOfUnity pt = RootOfUnity::make(n, k);
      if (a.contains(CirclePoint(pt))) continue;
      try {
        samples.push_back(Sample{pt, f(pt)});
      } catch (const PreconditionError&) {
        out.failure = "pole outside A at g = e^{2 pi i " + std::to_string(k) + "/" + std::to_string(n) + "}";
        out.samples_used = samples.size();
        return out;
      }
    }
  }
  out.samples_used = samples.size();
  RationalFn r;
  try {
    r = rational_reconstruct(samples, degree_bound);
  } catch (const PreconditionError& e) {
    out.failure = std::string("reconstruction failed: ") + e.what();
    return out;
  }
  if (!r.is_integral()) {
    out.failure = "reconstructed function has half-integral powers";
    return out;
  }
  PoleReport poles = unit_circle_poles(r);
  for (long n : poles.cyclotomic_orders) {
    if (!a.contains_all_primitive(n)) {
      out.failure = "pole outside A: primitive " + std::to_string(n) + "-th roots of unity";
      out.value = r;
      return out;
    }
  }
  if (poles.other_unit_circle_roots > 0) {
    out.failure = "pole outside A: " + std::to_string(poles.other_unit_circle_roots) +
                  " unit-circle root(s) that are not roots of unity";
    out.value = r;
    return out;
  }
  out.ok = true;
  out.value = r;
  return out;
}

}  // namespace lambdak
