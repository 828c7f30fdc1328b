#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lambdak/numeric.hpp"
#include "json.hpp"

namespace lambdak {

class Cdga;
using CdgaPtr = std::shared_ptr<const Cdga>;

/// Element of a finite CDGA, dense over the monomial basis.
class Form {
 public:
  Form() = default;
  Form(CdgaPtr algebra, std::vector<Rational> coeffs);

  const CdgaPtr& algebra() const { return algebra_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }

  bool is_zero() const;
  /// Component in form degree p.
  Form degree_part(int p) const;
  /// Sum of the even (or odd) degree components.
  Form even_part() const;
  Form odd_part() const;
  /// Lowest degree carrying a nonzero coefficient, or -1 for zero.
  int lowest_degree() const;
  Form d() const;

  Form operator-() const;
  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const Form& a, const Form& b);
  friend Form operator*(const Rational& s, Form a);
  friend bool operator==(const Form& a, const Form& b);

  std::string to_string() const;

 private:
  void check_same(const Form& o) const;

  CdgaPtr algebra_;
  std::vector<Rational> coeffs_;
};

/// Finite graded-commutative differential algebra: a truncated free CDGA on
/// generators of positive degree.
///
/// Odd generators always square to zero. With the exterior relation every
/// generator squares to zero; with the truncated-polynomial relation even
/// generators are polynomial. Monomials above the top degree are zero.
/// The differential is given on generators and extended by the Leibniz rule;
/// construction verifies d^2 = 0 and Leibniz on every pair of basis monomials.
class Cdga : public std::enable_shared_from_this<Cdga> {
 public:
  enum class Relations { Exterior, TruncatedPolynomial };
  struct Generator {
    std::string name;
    int degree;
  };
  /// d(from) += coeff * to, where `to` is a product like "x*y" or "1".
  struct DifferentialTerm {
    std::string from;
    std::string to;
    Rational coeff;
  };

  /// top_degree < 0 means the sum of generator degrees (exterior only).
  static CdgaPtr build(std::vector<Generator> generators, Relations relations, int top_degree,
                       const std::vector<DifferentialTerm>& differential);
  /// {generators:[{name,degree}], relations:"exterior"|"truncated-polynomial",
  ///  d:[{from,to,coeff}], top_degree?}
  static CdgaPtr from_json(const nlohmann::json& spec);

  /// Exterior algebra on e1, e2 of degree 1 with d = 0 (cohomology of T^2).
  static CdgaPtr torus();
  /// x of degree 1, y of degree 2, dx = y, truncated above `top_degree`.
  static CdgaPtr exact_pair(int top_degree = 4);

  std::size_t dim() const { return basis_.size(); }
  int top_degree() const { return top_degree_; }
  int basis_degree(std::size_t i) const { return degrees_[i]; }
  const std::string& basis_name(std::size_t i) const { return names_[i]; }
  const std::vector<Generator>& generators() const { return generators_; }

  Form zero() const;
  Form unit() const;
  Form scalar(const Rational& c) const;
  Form basis_element(std::size_t i) const;
  /// Product of named generators, e.g. "x*y"; "1" is the unit.
  Form monomial(const std::string& text) const;

  /// Canonical representative modulo Im d: coordinates on the pivots of the
  /// reduced row echelon form of Im d are eliminated.
  Form reduce_mod_exact(const Form& f) const;
  bool is_exact(const Form& f) const { return reduce_mod_exact(f).is_zero(); }

 private:
  friend class Form;
  friend Form operator*(const Form& a, const Form& b);
  struct Product {
    long index;  // -1 when the product vanishes
    int sign;
  };

  Cdga() = default;
  void init_basis();
  void init_products();
  void init_differential(const std::vector<DifferentialTerm>& terms);
  void validate() const;
  void init_exact_image();
  std::vector<Rational> multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) const;
  std::vector<Rational> apply_d(const std::vector<Rational>& a) const;

  std::vector<Generator> generators_;
  Relations relations_ = Relations::Exterior;
  int top_degree_ = 0;
  std::vector<std::vector<int>> basis_;  // exponent vectors
  std::vector<int> degrees_;
  std::vector<std::string> names_;
  std::vector<std::vector<Product>> products_;
  std::vector<std::vector<Rational>> d_basis_;  // d of each basis monomial
  std::vector<std::vector<Rational>> exact_rref_;
  std::vector<std::size_t> exact_pivots_;
};

}  // namespace lambdak
