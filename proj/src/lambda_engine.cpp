#include "lambdak/lambda_engine.hpp"

#include <functional>

namespace lambdak {

std::size_t AtomTable::add_bundle(const std::string& name, int rank, long weight) {
  if (rank < 1) throw InputError("bundle rank must be positive");
  alphabet_ranks_.push_back(rank);
  atoms_.push_back(Atom{name, rank, weight, alphabet_ranks_.size() - 1, 1});
  return atoms_.size() - 1;
}

std::size_t AtomTable::add_dual(std::size_t atom, bool equivariant) {
  Atom base = this->atom(atom);
  atoms_.push_back(Atom{base.name + "*", base.rank, equivariant ? -base.weight : 0, base.alphabet, -base.root_sign});
  return atoms_.size() - 1;
}

HalfLaurent dilate(const HalfLaurent& p, long k) {
  if (k < 1) throw InputError("dilation factor must be positive");
  if (p.is_zero()) return p;
  const auto& c = p.q_coeffs();
  poly::ZPoly out((c.size() - 1) * static_cast<std::size_t>(k) + 1, Integer(0));
  for (std::size_t i = 0; i < c.size(); ++i) out[i * static_cast<std::size_t>(k)] = c[i];
  return HalfLaurent::from_q_coeffs(p.low_q() * k, std::move(out));
}

RationalFn dilate(const RationalFn& f, long k) { return RationalFn(dilate(f.num(), k), dilate(f.den(), k)); }

EquivSymSeries adams_equivariant(long k, const EquivSymSeries& s) {
  EquivSymSeries scaled = s.adams(k);
  EquivSymSeries out(s.layout(), s.basis());
  for (const auto& [key, c] : scaled.terms()) out.add_term(key, dilate(c, k));
  return out;
}

// ---------------------------------------------------------------------------

VirtualBundle VirtualBundle::constant(const HalfLaurent& c) {
  VirtualBundle out;
  out.add_term(Word{}, c);
  return out;
}

VirtualBundle VirtualBundle::lambda(std::size_t atom, int k) {
  if (k < 0) throw InputError("exterior power index must be non-negative");
  if (k == 0) return one();
  VirtualBundle out;
  out.add_term(Word{{{atom, k}, 1}}, HalfLaurent(1));
  return out;
}

void VirtualBundle::add_term(const Word& w, const HalfLaurent& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

VirtualBundle VirtualBundle::operator-() const {
  VirtualBundle out = *this;
  for (auto& [w, c] : out.terms_) c = -c;
  return out;
}

VirtualBundle& VirtualBundle::operator+=(const VirtualBundle& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

VirtualBundle& VirtualBundle::operator-=(const VirtualBundle& o) { return *this += -o; }

VirtualBundle& VirtualBundle::operator*=(const VirtualBundle& o) {
  VirtualBundle out;
  for (const auto& [wa, ca] : terms_) {
    for (const auto& [wb, cb] : o.terms_) {
      Word w = wa;
      for (const auto& [factor, e] : wb) w[factor] += e;
      out.add_term(w, ca * cb);
    }
  }
  *this = std::move(out);
  return *this;
}

VirtualBundle& VirtualBundle::operator*=(const HalfLaurent& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, x] : terms_) x *= c;
  return *this;
}

VirtualBundle VirtualBundle::pow(int e) const {
  if (e < 0) throw InputError("negative power of a virtual bundle");
  VirtualBundle out = one();
  for (int i = 0; i < e; ++i) out *= *this;
  return out;
}

HalfLaurent VirtualBundle::character(const AtomTable& table) const {
  HalfLaurent acc;
  for (const auto& [w, c] : terms_) {
    HalfLaurent term = c;
    for (const auto& [factor, e] : w) {
      const Atom& a = table.atom(factor.first);
      HalfLaurent f = HalfLaurent::g_monomial(factor.second * a.weight, binomial(a.rank, factor.second));
      term *= f.pow(e);
    }
    acc += term;
  }
  return acc;
}

EquivSymSeries VirtualBundle::chern(const AtomTable& table, int cutoff) const {
  Layout layout = table.layout(cutoff);
  std::map<std::pair<std::size_t, int>, EquivSymSeries> cache;
  auto factor_series = [&](const std::pair<std::size_t, int>& f) -> const EquivSymSeries& {
    auto it = cache.find(f);
    if (it != cache.end()) return it->second;
    const Atom& a = table.atom(f.first);
    auto e = twisted_exp(HalfLaurent::g_monomial(a.weight), Rational(a.root_sign), cutoff);
    return cache.emplace(f, elementary_of(layout, a.alphabet, e, f.second)).first->second;
  };
  EquivSymSeries acc(layout);
  for (const auto& [w, c] : terms_) {
    EquivSymSeries term = EquivSymSeries::constant(layout, RationalFn(c));
    for (const auto& [f, e] : w) term *= factor_series(f).pow(e);
    acc += term;
  }
  return acc;
}

std::pair<VirtualBundle, VirtualBundle> VirtualBundle::sign_split() const {
  VirtualBundle plus, minus;
  for (const auto& [w, c] : terms_) {
    const auto& q = c.q_coeffs();
    poly::ZPoly pos(q.size(), Integer(0)), neg(q.size(), Integer(0));
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (q[i] > 0) pos[i] = q[i];
      else neg[i] = -q[i];
    }
    plus.add_term(w, HalfLaurent::from_q_coeffs(c.low_q(), pos));
    minus.add_term(w, HalfLaurent::from_q_coeffs(c.low_q(), neg));
  }
  return {plus, minus};
}

std::string VirtualBundle::to_string(const AtomTable& table) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : terms_) {
    if (!out.empty()) out += " + ";
    std::string word;
    for (const auto& [f, e] : w) {
      if (!word.empty()) word += "*";
      const Atom& a = table.atom(f.first);
      word += f.second == 1 ? a.name : "L" + std::to_string(f.second) + "(" + a.name + ")";
      if (e > 1) word += "^" + std::to_string(e);
    }
    std::string cs = c.to_string();
    if (word.empty()) out += cs;
    else if (cs == "1") out += word;
    else out += "(" + cs + ")*" + word;
  }
  return out;
}

// ---------------------------------------------------------------------------

VirtualBundle lambda_of_sum(const std::vector<std::size_t>& atoms, int k) {
  if (k < 0) throw InputError("lambda index must be non-negative");
  // Convolution over the summands.
  std::vector<VirtualBundle> acc(k + 1);
  acc[0] = VirtualBundle::one();
  for (std::size_t a : atoms) {
    std::vector<VirtualBundle> next(k + 1);
    for (int i = 0; i <= k; ++i) {
      for (int j = 0; i + j <= k; ++j) next[i + j] += acc[i] * VirtualBundle::lambda(a, j);
    }
    acc = std::move(next);
  }
  return acc[k];
}

VirtualBundle gamma_k_closed(const AtomTable& table, int k, std::size_t atom) {
  if (k < 0) throw InputError("gamma index must be non-negative");
  const int r = table.atom(atom).rank;
  VirtualBundle out;
  if (k > r) return out;
  for (int i = 0; i <= k; ++i) {
    Integer c = binomial(r - i, k - i);
    if ((k - i) % 2 == 1) c = -c;
    out += HalfLaurent(c) * VirtualBundle::lambda(atom, i);
  }
  return out;
}

VirtualBundle gamma_of_reduced_sum(const AtomTable& table, const std::vector<std::size_t>& atoms, int k) {
  if (k < 0) throw InputError("gamma index must be non-negative");
  std::vector<VirtualBundle> acc(k + 1);
  acc[0] = VirtualBundle::one();
  for (std::size_t a : atoms) {
    std::vector<VirtualBundle> next(k + 1);
    for (int i = 0; i <= k; ++i) {
      for (int j = 0; i + j <= k; ++j) next[i + j] += acc[i] * gamma_k_closed(table, j, a);
    }
    acc = std::move(next);
  }
  return acc[k];
}

std::pair<VirtualBundle, VirtualBundle> p_k_pm(const AtomTable& table, int k, std::size_t atom) {
  if (k < 0) throw InputError("index must be non-negative");
  const int r = table.atom(atom).rank;
  std::vector<VirtualBundle> gammas;
  for (int i = 0; i <= r; ++i) gammas.push_back(gamma_k_closed(table, i, atom));
  VirtualBundle total;
  std::vector<int> n(r + 1, 0);
  // Enumerate (n_1..n_r) with sum i n_i = k.
  std::function<void(int, int)> rec = [&](int i, int remaining) {
    if (i > r) {
      if (remaining != 0) return;
      int parts = 0;
      Integer denom = 1;
      VirtualBundle term = VirtualBundle::one();
      for (int j = 1; j <= r; ++j) {
        parts += n[j];
        denom *= factorial(n[j]);
        if (n[j] > 0) term *= gammas[j].pow(n[j]);
      }
      Integer c = factorial(parts) / denom;
      if (parts % 2 == 1) c = -c;
      total += HalfLaurent(c) * term;
      return;
    }
    for (int m = 0; m * i <= remaining; ++m) {
      n[i] = m;
      rec(i + 1, remaining - m * i);
    }
    n[i] = 0;
  };
  rec(1, k);
  return total.sign_split();
}

bool verify_p_recursion(const AtomTable& table, std::size_t atom, int max_l, int cutoff) {
  std::vector<VirtualBundle> p;
  for (int l = 0; l <= max_l; ++l) {
    auto [plus, minus] = p_k_pm(table, l, atom);
    p.push_back(plus - minus);
  }
  for (int l = 1; l <= max_l; ++l) {
    VirtualBundle sum;
    for (int i = 0; i <= l; ++i) sum += gamma_k_closed(table, i, atom) * p[l - i];
    if (!sum.character(table).is_zero()) return false;
    if (!sum.chern(table, cutoff).is_zero()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

TruncatedInverse::TruncatedInverse(std::vector<NormalWeight> weights, int level, const std::optional<CirclePoint>& point)
    : level_(level) {
  if (level < 1) throw InputError("truncation level must be at least 1");
  check_normal_weights(weights, point);
  // One summand per weight.
  std::map<long, int> merged;
  for (const auto& w : weights) {
    if (w.rank > 0) merged[w.v] += w.rank;
  }
  for (const auto& [v, r] : merged) weights_.push_back(NormalWeight{v, r});

  numerator_ = VirtualBundle::one();
  for (const auto& w : weights_) {
    std::size_t normal = table_.add_bundle("N" + std::to_string(w.v), w.rank, w.v);
    std::size_t dual = table_.add_dual(normal, false);
    normal_atoms_.push_back(normal);
    dual_atoms_.push_back(dual);
    HalfLaurent gv1 = HalfLaurent::g_monomial(w.v) - HalfLaurent(1);
    // g^{v r} [(g^v - 1)^N + sum_k (-1)^k (g^v - 1)^{N-k} P_k]
    VirtualBundle factor = VirtualBundle::constant(gv1.pow(level));
    for (int k = 1; k <= level; ++k) {
      auto [plus, minus] = p_k_pm(table_, k, dual);
      HalfLaurent c = gv1.pow(level - k);
      if (k % 2 == 1) c = -c;
      factor += c * (plus - minus);
    }
    numerator_ *= HalfLaurent::g_monomial(w.v * w.rank) * factor;
    denominator_[w.v] += w.rank + level;
  }
}

HalfLaurent TruncatedInverse::denominator_polynomial() const {
  HalfLaurent out(1);
  for (const auto& [v, e] : denominator_) out *= (HalfLaurent::g_monomial(v) - HalfLaurent(1)).pow(e);
  return out;
}

RationalFn TruncatedInverse::character() const {
  return RationalFn(numerator_.character(table_), denominator_polynomial());
}

EquivSymSeries TruncatedInverse::chern(int cutoff) const {
  return RationalFn(HalfLaurent(1), denominator_polynomial()) * numerator_.chern(table_, cutoff);
}

EquivSymSeries TruncatedInverse::lambda_minus_one_chern(int cutoff) const {
  Layout layout = table_.layout(cutoff);
  EquivSymSeries out = EquivSymSeries::constant(layout, RationalFn(1));
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    out *= multiplicative_series(layout, table_.atom(normal_atoms_[i]).alphabet,
                                 lambda_minus_one_dual_factor(weights_[i].v, cutoff));
  }
  return out;
}

RationalFn TruncatedInverse::lambda_minus_one_character() const {
  HalfLaurent out(1);
  for (const auto& w : weights_) out *= (HalfLaurent(1) - HalfLaurent::g_monomial(-w.v)).pow(w.rank);
  return RationalFn(out);
}

TruncatedInverse truncated_inverse(const std::vector<NormalWeight>& weights, int level,
                                   const std::optional<CirclePoint>& point) {
  return TruncatedInverse(weights, level, point);
}

bool verify_unit_identity(const std::vector<NormalWeight>& weights, int level, int cutoff,
                          const std::optional<CirclePoint>& point) {
  if (level < cutoff) throw PreconditionError("truncation level must be at least the cutoff");
  TruncatedInverse inv(weights, level, point);
  EquivSymSeries product = inv.lambda_minus_one_chern(cutoff) * inv.chern(cutoff);
  if (!(product == EquivSymSeries::constant(inv.table().layout(cutoff), RationalFn(1)))) return false;
  return (inv.lambda_minus_one_character() * inv.character()).is_one();
}

Integer n_rm_bound(long r, long m) {
  if (r < 1 || m < 0) throw InputError("n_rm_bound needs r >= 1 and m >= 0");
  Integer r2 = Integer(r) * r;
  return 2 * r2 * r2 * ((Integer(m) + 1) * (2 * Integer(m) + 1) * r2 - 1);
}

bool gamma_nilpotency_check(int r, const std::vector<int>& exponents, int cutoff) {
  if (static_cast<int>(exponents.size()) > r) throw InputError("more exponents than the rank");
  SymSeries product = SymSeries::constant(Layout{{r}, cutoff}, 1);
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] < 0) throw InputError("exponents must be non-negative");
    product *= gamma_ch_reduced(static_cast<int>(i) + 1, r, cutoff).pow(exponents[i]);
  }
  return product.is_zero();
}

}  // namespace lambdak
