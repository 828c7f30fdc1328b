#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lambdak/numeric.hpp"
#include "lambdak/rational_fn.hpp"

namespace lambdak {

inline bool coeff_is_zero(const Rational& c) { return c == 0; }
inline bool coeff_is_zero(const RationalFn& c) { return c.is_zero(); }
inline Rational coeff_pow(const Rational& c, long e) { return rpow(c, e); }
inline RationalFn coeff_pow(const RationalFn& c, long e) { return c.pow(e); }
inline Rational coeff_inverse(const Rational& c) {
  if (c == 0) throw PreconditionError("division by zero");
  return Rational(1) / c;
}
inline RationalFn coeff_inverse(const RationalFn& c) { return c.inverse(); }
inline std::string coeff_string(const Rational& c) { return c.get_str(); }
inline std::string coeff_string(const RationalFn& c) {
  return c.is_constant() ? c.constant_value().get_str() : "(" + c.to_string() + ")";
}

/// Power series in one variable, coefficients 0..D.
template <typename C>
using Univariate = std::vector<C>;

template <typename C>
Univariate<C> uni_mul(const Univariate<C>& a, const Univariate<C>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  Univariate<C> out(n, C(Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    if (coeff_is_zero(a[i])) continue;
    for (std::size_t j = 0; i + j < n; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

template <typename C>
Univariate<C> uni_inverse(const Univariate<C>& a) {
  Univariate<C> out(a.size(), C(Rational(0)));
  C inv0 = coeff_inverse(a[0]);
  out[0] = inv0;
  for (std::size_t n = 1; n < a.size(); ++n) {
    C acc(Rational(0));
    for (std::size_t k = 1; k <= n; ++k) acc += a[k] * out[n - k];
    out[n] = -(acc * inv0);
  }
  return out;
}

/// log a for a[0] = 1, through n l_n = n a_n - sum_{k<n} k l_k a_{n-k}.
template <typename C>
Univariate<C> uni_log(const Univariate<C>& a) {
  if (!(a[0] == C(Rational(1)))) throw Error("log needs constant term 1");
  Univariate<C> out(a.size(), C(Rational(0)));
  for (std::size_t n = 1; n < a.size(); ++n) {
    C acc = C(Rational(static_cast<long>(n))) * a[n];
    for (std::size_t k = 1; k < n; ++k) acc -= C(Rational(static_cast<long>(k))) * out[k] * a[n - k];
    out[n] = acc * C(Rational(1, static_cast<long>(n)));
  }
  return out;
}

/// exp a for a[0] = 0, through n e_n = sum_k k a_k e_{n-k}.
template <typename C>
Univariate<C> uni_exp(const Univariate<C>& a) {
  if (!coeff_is_zero(a[0])) throw Error("exp needs constant term 0");
  Univariate<C> out(a.size(), C(Rational(0)));
  out[0] = C(Rational(1));
  for (std::size_t n = 1; n < a.size(); ++n) {
    C acc(Rational(0));
    for (std::size_t k = 1; k <= n; ++k) acc += C(Rational(static_cast<long>(k))) * a[k] * out[n - k];
    out[n] = acc * C(Rational(1, static_cast<long>(n)));
  }
  return out;
}

/// exp(s u) truncated at degree D.
template <typename C>
Univariate<C> uni_exp_linear(const Rational& s, int cutoff) {
  Univariate<C> out(cutoff + 1, C(Rational(0)));
  Rational term = 1;
  for (int k = 0; k <= cutoff; ++k) {
    out[k] = C(term);
    term = term * s / Rational(k + 1);
  }
  return out;
}

enum class SymBasis { Chern, PowerSum };

/// Alphabets of formal roots (one rank each) and the total-degree cutoff.
struct Layout {
  std::vector<int> ranks;
  int cutoff = 0;
  friend bool operator==(const Layout&, const Layout&) = default;
};

/// Truncated symmetric series in several root alphabets.
///
/// Monomials are products of Chern classes c_1..c_r (or power sums p_1..p_D)
/// of each alphabet; deg c_i = i, deg p_k = k. Terms above the cutoff are
/// dropped.
template <typename C>
class Series {
 public:
  using Key = std::vector<int>;

  explicit Series(Layout layout, SymBasis basis = SymBasis::Chern) : layout_(std::move(layout)), basis_(basis) {
    if (layout_.cutoff < 0) throw InputError("cutoff must be non-negative");
    for (std::size_t a = 0; a < layout_.ranks.size(); ++a) {
      if (layout_.ranks[a] < 0) throw InputError("rank must be non-negative");
      offsets_.push_back(static_cast<int>(weights_.size()));
      int vars = basis_ == SymBasis::Chern ? layout_.ranks[a] : layout_.cutoff;
      for (int i = 1; i <= vars; ++i) weights_.push_back(i);
    }
  }

  static Series constant(const Layout& layout, const C& c, SymBasis basis = SymBasis::Chern) {
    Series s(layout, basis);
    s.add_term(Key(s.weights_.size(), 0), c);
    return s;
  }
  /// c_i (or p_i) of the given alphabet; zero when i exceeds the rank (or cutoff).
  static Series variable(const Layout& layout, std::size_t alphabet, int i, SymBasis basis = SymBasis::Chern) {
    Series s(layout, basis);
    if (alphabet >= layout.ranks.size()) throw InputError("alphabet index out of range");
    int vars = basis == SymBasis::Chern ? layout.ranks[alphabet] : layout.cutoff;
    if (i < 1) throw InputError("class index must be positive");
    if (i > vars || i > layout.cutoff) return s;
    Key k(s.weights_.size(), 0);
    k[s.offsets_[alphabet] + i - 1] = 1;
    s.add_term(k, C(Rational(1)));
    return s;
  }

  const Layout& layout() const { return layout_; }
  int cutoff() const { return layout_.cutoff; }
  SymBasis basis() const { return basis_; }
  const std::map<Key, C>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int key_degree(const Key& k) const {
    int d = 0;
    for (std::size_t i = 0; i < k.size(); ++i) d += weights_[i] * k[i];
    return d;
  }

  C coefficient(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? C(Rational(0)) : it->second;
  }
  C constant_term() const { return coefficient(Key(weights_.size(), 0)); }

  void add_term(const Key& k, const C& c) {
    if (k.size() != weights_.size()) throw Error("monomial does not fit the layout");
    if (key_degree(k) > layout_.cutoff || coeff_is_zero(c)) return;
    auto [it, fresh] = terms_.emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  Series operator-() const {
    Series out = *this;
    for (auto& [k, c] : out.terms_) c = -c;
    return out;
  }
  Series& operator+=(const Series& o) {
    check_same(o);
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  Series& operator-=(const Series& o) { return *this += -o; }
  Series& operator*=(const Series& o) {
    check_same(o);
    Series out(layout_, basis_);
    Key k(weights_.size());
    for (const auto& [ka, ca] : terms_) {
      int da = key_degree(ka);
      for (const auto& [kb, cb] : o.terms_) {
        if (da + key_degree(kb) > layout_.cutoff) continue;
        for (std::size_t i = 0; i < k.size(); ++i) k[i] = ka[i] + kb[i];
        out.add_term(k, ca * cb);
      }
    }
    *this = std::move(out);
    return *this;
  }
  Series& operator*=(const C& s) {
    if (coeff_is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(Series a, const Series& b) { return a *= b; }
  friend Series operator*(const C& s, Series a) { return a *= s; }
  friend bool operator==(const Series& a, const Series& b) {
    return a.layout_ == b.layout_ && a.basis_ == b.basis_ && a.terms_ == b.terms_;
  }

  /// Re-keys into a larger Chern-basis layout; alphabet a goes to target alphabet
  /// alphabet_map[a], which must have the same rank.
  Series embed(const Layout& target, const std::vector<std::size_t>& alphabet_map) const {
    if (basis_ != SymBasis::Chern) throw InputError("embed needs the Chern basis");
    if (alphabet_map.size() != layout_.ranks.size()) throw InputError("alphabet map has the wrong length");
    Series out(target);
    for (std::size_t a = 0; a < alphabet_map.size(); ++a) {
      if (alphabet_map[a] >= target.ranks.size() || target.ranks[alphabet_map[a]] != layout_.ranks[a]) {
        throw InputError("alphabet map does not preserve ranks");
      }
    }
    for (const auto& [k, c] : terms_) {
      Key out_key(out.weights_.size(), 0);
      for (std::size_t a = 0; a < alphabet_map.size(); ++a) {
        for (int i = 0; i < layout_.ranks[a]; ++i) out_key[out.offsets_[alphabet_map[a]] + i] = k[offsets_[a] + i];
      }
      out.add_term(out_key, c);
    }
    return out;
  }

  Series degree_part(int d) const {
    Series out(layout_, basis_);
    for (const auto& [k, c] : terms_) {
      if (key_degree(k) == d) out.terms_.emplace(k, c);
    }
    return out;
  }
  /// Lowest total degree with a nonzero term, or -1 for zero.
  int lowest_degree() const {
    int best = -1;
    for (const auto& [k, c] : terms_) {
      int d = key_degree(k);
      if (best < 0 || d < best) best = d;
    }
    return best;
  }

  /// Substitutes u -> k u in every alphabet: degree-l part times k^l.
  Series adams(long k) const {
    Series out = *this;
    for (auto& [key, c] : out.terms_) c *= C(Rational(ipow(Integer(k), static_cast<unsigned long>(key_degree(key)))));
    return out;
  }

  /// Multiplicative inverse; the constant term must be invertible.
  Series inverse() const {
    C c0 = constant_term();
    C inv0 = coeff_inverse(c0);
    Series nil = *this - constant(layout_, c0, basis_);
    nil *= -inv0;  // this = c0 (1 - nil)
    Series out = constant(layout_, inv0, basis_);
    Series power = constant(layout_, C(Rational(1)), basis_);
    for (int i = 1; i <= layout_.cutoff; ++i) {
      power *= nil;
      if (power.is_zero()) break;
      out += inv0 * power;
    }
    return out;
  }

  /// exp of a series without constant term.
  Series exp() const {
    if (!coeff_is_zero(constant_term())) throw Error("exp needs a series without constant term");
    Series out = constant(layout_, C(Rational(1)), basis_);
    Series power = out;
    for (int m = 1; m <= layout_.cutoff; ++m) {
      power *= *this;
      if (power.is_zero()) break;
      out += C(Rational(1, 1) / Rational(factorial(m))) * power;
    }
    return out;
  }

  Series pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Series out = constant(layout_, C(Rational(1)), basis_);
    for (long i = 0; i < e; ++i) out *= *this;
    return out;
  }

  /// Value at explicit roots: c_i -> e_i(roots), p_k -> sum of k-th powers.
  C evaluate(const std::vector<std::vector<Rational>>& roots) const {
    if (roots.size() != layout_.ranks.size()) throw InputError("one root list per alphabet is required");
    std::vector<Rational> var_values;
    for (std::size_t a = 0; a < roots.size(); ++a) {
      if (static_cast<int>(roots[a].size()) != layout_.ranks[a]) throw InputError("root count does not match rank");
      int vars = basis_ == SymBasis::Chern ? layout_.ranks[a] : layout_.cutoff;
      // Elementary symmetric values by expanding prod (1 + u t).
      std::vector<Rational> e(roots[a].size() + 1, Rational(0));
      e[0] = 1;
      for (const auto& u : roots[a]) {
        for (std::size_t i = e.size() - 1; i >= 1; --i) e[i] += u * e[i - 1];
      }
      for (int i = 1; i <= vars; ++i) {
        if (basis_ == SymBasis::Chern) var_values.push_back(e[i]);
        else {
          Rational p = 0;
          for (const auto& u : roots[a]) p += rpow(u, i);
          var_values.push_back(p);
        }
      }
    }
    C acc(Rational(0));
    for (const auto& [k, c] : terms_) {
      Rational m = 1;
      for (std::size_t i = 0; i < k.size(); ++i) {
        if (k[i] != 0) m *= rpow(var_values[i], k[i]);
      }
      acc += c * C(m);
    }
    return acc;
  }

  /// Name of a monomial, e.g. "c1^2*c2" or "c1[0]*c1[1]" with several alphabets.
  std::string key_name(const Key& k) const {
    std::string out;
    const char* letter = basis_ == SymBasis::Chern ? "c" : "p";
    for (std::size_t a = 0; a < offsets_.size(); ++a) {
      int vars = basis_ == SymBasis::Chern ? layout_.ranks[a] : layout_.cutoff;
      for (int i = 0; i < vars; ++i) {
        int e = k[offsets_[a] + i];
        if (e == 0) continue;
        if (!out.empty()) out += "*";
        out += letter + std::to_string(i + 1);
        if (offsets_.size() > 1) out += "[" + std::to_string(a) + "]";
        if (e > 1) out += "^" + std::to_string(e);
      }
    }
    return out.empty() ? "1" : out;
  }

  /// Parses a key_name back into a monomial key.
  Key parse_key(const std::string& text) const {
    Key k(weights_.size(), 0);
    if (text == "1") return k;
    std::stringstream in(text);
    std::string factor;
    const char letter = basis_ == SymBasis::Chern ? 'c' : 'p';
    while (std::getline(in, factor, '*')) {
      try {
        if (factor.empty() || factor[0] != letter) throw InputError("");
        std::size_t pos = 1;
        int index = std::stoi(factor.substr(pos), &pos);
        pos += 1;
        std::size_t alphabet = 0;
        if (pos < factor.size() && factor[pos] == '[') {
          std::size_t used = 0;
          alphabet = std::stoul(factor.substr(pos + 1), &used);
          pos += used + 1;
          if (pos >= factor.size() || factor[pos] != ']') throw InputError("");
          ++pos;
        } else if (offsets_.size() > 1) {
          throw InputError("");
        }
        int e = 1;
        if (pos < factor.size()) {
          if (factor[pos] != '^') throw InputError("");
          std::size_t used = 0;
          e = std::stoi(factor.substr(pos + 1), &used);
          if (pos + 1 + used != factor.size()) throw InputError("");
        }
        int vars = basis_ == SymBasis::Chern ? layout_.ranks.at(alphabet) : layout_.cutoff;
        if (index < 1 || index > vars || e < 0) throw InputError("");
        k[offsets_[alphabet] + index - 1] += e;
      } catch (const std::exception&) {
        throw InputError("bad monomial '" + text + "'");
      }
    }
    return k;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Key, C>> sorted(terms_.begin(), terms_.end());
    std::stable_sort(sorted.begin(), sorted.end(), [&](const auto& a, const auto& b) {
      int da = key_degree(a.first), db = key_degree(b.first);
      return da != db ? da < db : a.first > b.first;
    });
    std::string out;
    for (const auto& [k, c] : sorted) {
      std::string name = key_name(k);
      std::string cs = coeff_string(c);
      bool negative = cs[0] == '-';
      if (negative) cs.erase(0, 1);
      if (out.empty()) out += negative ? "-" : "";
      else out += negative ? " - " : " + ";
      if (name == "1") out += cs;
      else if (cs == "1") out += name;
      else out += cs + "*" + name;
    }
    return out;
  }

 private:
  void check_same(const Series& o) const {
    if (!(layout_ == o.layout_) || basis_ != o.basis_) throw Error("series over different layouts");
  }

  Layout layout_;
  SymBasis basis_;
  std::vector<int> weights_;
  std::vector<int> offsets_;
  std::map<Key, C> terms_;
};

using SymSeries = Series<Rational>;
using EquivSymSeries = Series<RationalFn>;

/// Power sum p_k of one alphabet in the Chern basis (Newton's identities).
template <typename C>
Series<C> power_sum_in_chern(const Layout& layout, std::size_t alphabet, int k) {
  std::vector<Series<C>> p{Series<C>::constant(layout, C(Rational(layout.ranks.at(alphabet))))};
  for (int m = 1; m <= k; ++m) {
    // p_m = sum_{i<m} (-1)^{i-1} e_i p_{m-i} + (-1)^{m-1} m e_m
    Series<C> acc(layout);
    for (int i = 1; i < m; ++i) {
      Series<C> term = Series<C>::variable(layout, alphabet, i) * p[m - i];
      if (i % 2 == 1) acc += term;
      else acc -= term;
    }
    Series<C> last = C(Rational(m)) * Series<C>::variable(layout, alphabet, m);
    if (m % 2 == 1) acc += last;
    else acc -= last;
    p.push_back(std::move(acc));
  }
  return p[k];
}

/// Expresses a Chern-basis series in power sums (exact; c_i with i <= rank).
template <typename C>
Series<C> to_power_sums(const Series<C>& s) {
  if (s.basis() != SymBasis::Chern) throw Error("series is already in power sums");
  const Layout& layout = s.layout();
  // e_k of each alphabet in power sums: k e_k = sum_{i=1}^k (-1)^{i-1} e_{k-i} p_i.
  std::vector<std::vector<Series<C>>> e(layout.ranks.size());
  for (std::size_t a = 0; a < layout.ranks.size(); ++a) {
    e[a].push_back(Series<C>::constant(layout, C(Rational(1)), SymBasis::PowerSum));
    for (int k = 1; k <= layout.ranks[a]; ++k) {
      Series<C> acc(layout, SymBasis::PowerSum);
      for (int i = 1; i <= k; ++i) {
        Series<C> term = e[a][k - i] * Series<C>::variable(layout, a, i, SymBasis::PowerSum);
        if (i % 2 == 1) acc += term;
        else acc -= term;
      }
      e[a].push_back(C(Rational(1, k)) * acc);
    }
  }
  Series<C> out(layout, SymBasis::PowerSum);
  for (const auto& [key, c] : s.terms()) {
    Series<C> term = Series<C>::constant(layout, c, SymBasis::PowerSum);
    std::size_t pos = 0;
    for (std::size_t a = 0; a < layout.ranks.size(); ++a) {
      for (int i = 1; i <= layout.ranks[a]; ++i, ++pos) {
        if (key[pos] != 0) term *= e[a][i].pow(key[pos]);
      }
    }
    out += term;
  }
  return out;
}

/// Expresses a power-sum series in the Chern basis.
template <typename C>
Series<C> from_power_sums(const Series<C>& s) {
  if (s.basis() != SymBasis::PowerSum) throw Error("series is not in power sums");
  const Layout& layout = s.layout();
  std::vector<std::vector<Series<C>>> p(layout.ranks.size());
  for (std::size_t a = 0; a < layout.ranks.size(); ++a) {
    p[a].push_back(Series<C>(layout));
    for (int k = 1; k <= layout.cutoff; ++k) p[a].push_back(power_sum_in_chern<C>(layout, a, k));
  }
  Series<C> out(layout);
  for (const auto& [key, c] : s.terms()) {
    Series<C> term = Series<C>::constant(layout, c);
    std::size_t pos = 0;
    for (std::size_t a = 0; a < layout.ranks.size(); ++a) {
      for (int k = 1; k <= layout.cutoff; ++k, ++pos) {
        if (key[pos] != 0) term *= p[a][k].pow(key[pos]);
      }
    }
    out += term;
  }
  return out;
}

/// sum_j f(u_j) over one alphabet: r f(0) + sum_k f_k p_k.
template <typename C>
Series<C> additive_series(const Layout& layout, std::size_t alphabet, const Univariate<C>& f) {
  Series<C> out = Series<C>::constant(layout, C(Rational(layout.ranks.at(alphabet))) * f.at(0));
  for (int k = 1; k <= layout.cutoff && k < static_cast<int>(f.size()); ++k) {
    if (!coeff_is_zero(f[k])) out += f[k] * power_sum_in_chern<C>(layout, alphabet, k);
  }
  return out;
}

/// prod_j f(u_j) over one alphabet: f(0)^r exp(sum_k b_k p_k), log(f/f(0)) = sum b_k u^k.
template <typename C>
Series<C> multiplicative_series(const Layout& layout, std::size_t alphabet, Univariate<C> f) {
  f.resize(layout.cutoff + 1, C(Rational(0)));
  const int r = layout.ranks.at(alphabet);
  C f0 = f[0];
  C inv0 = coeff_inverse(f0);
  for (auto& c : f) c *= inv0;
  Univariate<C> b = uni_log(f);
  b[0] = C(Rational(0));
  Series<C> exponent = additive_series(layout, alphabet, b);
  return coeff_pow(f0, r) * exponent.exp();
}

/// sigma_i(f(u_1), ..., f(u_r)) over one alphabet, from the power sums of f(u_j).
template <typename C>
Series<C> elementary_of(const Layout& layout, std::size_t alphabet, const Univariate<C>& f, int i) {
  const int r = layout.ranks.at(alphabet);
  if (i < 0) throw InputError("index must be non-negative");
  if (i > r) return Series<C>(layout);
  Univariate<C> fd = f;
  fd.resize(layout.cutoff + 1, C(Rational(0)));
  std::vector<Series<C>> q{Series<C>(layout)};
  Univariate<C> power = fd;
  for (int m = 1; m <= i; ++m) {
    q.push_back(additive_series(layout, alphabet, power));
    power = uni_mul(power, fd);
  }
  std::vector<Series<C>> sigma{Series<C>::constant(layout, C(Rational(1)))};
  for (int n = 1; n <= i; ++n) {
    Series<C> acc(layout);
    for (int m = 1; m <= n; ++m) {
      Series<C> term = sigma[n - m] * q[m];
      if (m % 2 == 1) acc += term;
      else acc -= term;
    }
    sigma.push_back(C(Rational(1, n)) * acc);
  }
  return sigma[i];
}

}  // namespace lambdak
