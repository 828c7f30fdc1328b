#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lambdak/characteristic.hpp"

namespace lambdak {

/// A vector bundle on which the circle acts by g^weight. Its formal roots are
/// those of `alphabet`, multiplied by root_sign (-1 for a dual).
struct Atom {
  std::string name;
  int rank;
  long weight;
  std::size_t alphabet;
  int root_sign;
};

class AtomTable {
 public:
  /// New bundle with its own root alphabet.
  std::size_t add_bundle(const std::string& name, int rank, long weight);
  /// Dual of an existing atom, sharing its alphabet. The equivariant dual
  /// has weight -w; the plain dual carries weight 0.
  std::size_t add_dual(std::size_t atom, bool equivariant);

  const Atom& atom(std::size_t i) const { return atoms_.at(i); }
  std::size_t size() const { return atoms_.size(); }
  Layout layout(int cutoff) const { return Layout{alphabet_ranks_, cutoff}; }

 private:
  std::vector<Atom> atoms_;
  std::vector<int> alphabet_ranks_;
};

/// g -> g^k on coefficients.
HalfLaurent dilate(const HalfLaurent& p, long k);
RationalFn dilate(const RationalFn& f, long k);
/// Equivariant Adams operation: u -> k u and g -> g^k.
EquivSymSeries adams_equivariant(long k, const EquivSymSeries& s);

/// Formal combination of words in exterior powers of atoms, with HalfLaurent
/// coefficients. Words multiply as commutative monomials; no relations
/// between exterior powers are imposed at this level.
class VirtualBundle {
 public:
  /// (atom, k) -> exponent of Lambda^k(atom).
  using Word = std::map<std::pair<std::size_t, int>, int>;

  VirtualBundle() = default;
  static VirtualBundle constant(const HalfLaurent& c);
  static VirtualBundle one() { return constant(HalfLaurent(1)); }
  /// Lambda^k(atom); Lambda^0 = 1.
  static VirtualBundle lambda(std::size_t atom, int k);

  const std::map<Word, HalfLaurent>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const Word& w, const HalfLaurent& c);

  VirtualBundle operator-() const;
  VirtualBundle& operator+=(const VirtualBundle& o);
  VirtualBundle& operator-=(const VirtualBundle& o);
  VirtualBundle& operator*=(const VirtualBundle& o);
  VirtualBundle& operator*=(const HalfLaurent& c);
  friend VirtualBundle operator+(VirtualBundle a, const VirtualBundle& b) { return a += b; }
  friend VirtualBundle operator-(VirtualBundle a, const VirtualBundle& b) { return a -= b; }
  friend VirtualBundle operator*(VirtualBundle a, const VirtualBundle& b) { return a *= b; }
  friend VirtualBundle operator*(const HalfLaurent& c, VirtualBundle a) { return a *= c; }
  friend bool operator==(const VirtualBundle& a, const VirtualBundle& b) { return a.terms_ == b.terms_; }
  VirtualBundle pow(int e) const;

  /// Character at a fixed point: Lambda^k(A) -> C(r, k) g^{k w}.
  HalfLaurent character(const AtomTable& table) const;
  /// ch_g: Lambda^k(A) -> sigma_k(g^w e^{s u_1}, ..., g^w e^{s u_r}), s the root sign.
  EquivSymSeries chern(const AtomTable& table, int cutoff) const;

  /// Splits the coefficients by sign: this = plus - minus, both with
  /// non-negative coefficients on every (word, g-power).
  std::pair<VirtualBundle, VirtualBundle> sign_split() const;

  std::string to_string(const AtomTable& table) const;

 private:
  std::map<Word, HalfLaurent> terms_;
};

/// lambda^k of a sum of atoms (repetitions allowed).
VirtualBundle lambda_of_sum(const std::vector<std::size_t>& atoms, int k);
/// gamma^k(E - r) = sum_{i<=k} (-1)^{k-i} C(r-i, k-i) Lambda^i E; zero for k > r.
VirtualBundle gamma_k_closed(const AtomTable& table, int k, std::size_t atom);
/// gamma^k of sum_j (A_j - r_j), by the product rule over atoms.
VirtualBundle gamma_of_reduced_sum(const AtomTable& table, const std::vector<std::size_t>& atoms, int k);

/// Positive and negative parts of the coefficient of s^k in
/// (1 + sum_i gamma^i(E - r) s^i)^{-1}, expanded in exterior-power words.
std::pair<VirtualBundle, VirtualBundle> p_k_pm(const AtomTable& table, int k, std::size_t atom);

/// Checks sum_{i=0}^{l} gamma^i(E - r) (P_{l-i,+} - P_{l-i,-}) = 0 in the
/// character and chern views for 1 <= l <= max_l.
bool verify_p_recursion(const AtomTable& table, std::size_t atom, int max_l, int cutoff);

/// Level-N inverse of lambda_{-1}(N*) for N = sum_v N_v, over the common
/// denominator prod_v (g^v - 1)^{r_v + N}.
class TruncatedInverse {
 public:
  TruncatedInverse(std::vector<NormalWeight> weights, int level, const std::optional<CirclePoint>& point = std::nullopt);

  int level() const { return level_; }
  const std::vector<NormalWeight>& weights() const { return weights_; }
  const AtomTable& table() const { return table_; }
  /// Atom of the plain dual of N_v, one per weight entry.
  std::size_t dual_atom(std::size_t i) const { return dual_atoms_.at(i); }
  /// Atom of N_v itself (weight v).
  std::size_t normal_atom(std::size_t i) const { return normal_atoms_.at(i); }
  const VirtualBundle& numerator() const { return numerator_; }
  /// v -> exponent of (g^v - 1) in the denominator.
  const std::map<long, int>& denominator() const { return denominator_; }
  HalfLaurent denominator_polynomial() const;
  /// numerator = mu_plus - mu_minus, split by sign.
  std::pair<VirtualBundle, VirtualBundle> mu() const { return numerator_.sign_split(); }

  RationalFn character() const;
  EquivSymSeries chern(int cutoff) const;
  /// ch_g(lambda_{-1} N*) = prod_v prod_roots (1 - g^{-v} e^{-u}) over the same alphabets.
  EquivSymSeries lambda_minus_one_chern(int cutoff) const;
  RationalFn lambda_minus_one_character() const;

 private:
  std::vector<NormalWeight> weights_;
  int level_;
  AtomTable table_;
  std::vector<std::size_t> normal_atoms_;
  std::vector<std::size_t> dual_atoms_;
  VirtualBundle numerator_;
  std::map<long, int> denominator_;
};

TruncatedInverse truncated_inverse(const std::vector<NormalWeight>& weights, int level,
                                   const std::optional<CirclePoint>& point = std::nullopt);

/// ch_g(lambda_{-1} N*) ch_g(inverse_N) = 1 at the cutoff and the character
/// product is 1. Requires level >= cutoff.
bool verify_unit_identity(const std::vector<NormalWeight>& weights, int level, int cutoff,
                          const std::optional<CirclePoint>& point = std::nullopt);

/// 2 r^4 ((m+1)(2m+1) r^2 - 1).
Integer n_rm_bound(long r, long m);

/// Whether ch(prod_i gamma^i(E - r)^{n_i}) vanishes at the cutoff, with
/// exponents[i-1] = n_i.
bool gamma_nilpotency_check(int r, const std::vector<int>& exponents, int cutoff);

}  // namespace lambdak
