#pragma once

#include <ostream>
#include <vector>

#include "lambdak/cdga.hpp"
#include "lambdak/rational_fn.hpp"

namespace lambdak {

/// Pair (omega, phi) with omega closed of even degree and phi odd, taken
/// modulo exact forms. phi is stored as its canonical representative.
class GammaElement {
 public:
  /// Throws PreconditionError if omega is not closed or not even, or phi not odd.
  GammaElement(Form omega, Form phi);
  static GammaElement one(const CdgaPtr& algebra);
  static GammaElement zero(const CdgaPtr& algebra);
  static GammaElement scalar(const CdgaPtr& algebra, const Rational& c);

  const Form& omega() const { return omega_; }
  const Form& phi() const { return phi_; }
  const CdgaPtr& algebra() const { return omega_.algebra(); }
  /// Component in Z^{2l} + Omega^{2l-1}/Im d.
  GammaElement graded_part(int l) const;

  GammaElement operator-() const;
  GammaElement& operator+=(const GammaElement& o);
  GammaElement& operator-=(const GammaElement& o);
  friend GammaElement operator+(GammaElement a, const GammaElement& b) { return a += b; }
  friend GammaElement operator-(GammaElement a, const GammaElement& b) { return a -= b; }
  friend GammaElement operator*(const Rational& s, const GammaElement& a);
  /// The * product.
  friend GammaElement operator*(const GammaElement& a, const GammaElement& b);
  friend bool operator==(const GammaElement& a, const GammaElement& b) {
    return a.omega_ == b.omega_ && a.phi_ == b.phi_;
  }

  std::string to_string() const;

 private:
  Form omega_;
  Form phi_;
};

inline std::ostream& operator<<(std::ostream& out, const GammaElement& x) { return out << x.to_string(); }
inline std::ostream& operator<<(std::ostream& out, const Form& f) { return out << f.to_string(); }

/// (w1, f1) * (w2, f2) = (w1 w2, w1 f2 + f1 w2 - d(f1) f2).
GammaElement star_product(const GammaElement& x, const GammaElement& y);

/// Scales the degree-l component (omega in degree 2l, phi in 2l-1) by k^l.
GammaElement adams_gamma(long k, const GammaElement& x);
/// Same scaling on an even form.
Form adams_form(long k, const Form& omega);

/// Coefficient of t^k in (1+t)^a exp(sum_j (-1)^{j-1} Psi^j(x - a) t^j / j),
/// where a is the degree-0 part of omega. Throws PreconditionError
/// "rank must be integer" when a is not an integer.
GammaElement lambda_gamma(long k, const GammaElement& x);
/// The same series on closed even forms with the wedge product.
Form lambda_form(long k, const Form& omega);

/// Checks (a1, alpha) * (b1, beta) == (a1 b1, alpha b1 + a0 beta) in Gamma,
/// given d alpha = a1 - a0 and d beta = b1 - b0. Throws PreconditionError
/// when the inputs do not satisfy these relations.
bool cs_product_identity_check(const Form& a0, const Form& a1, const Form& b0, const Form& b1, const Form& alpha,
                               const Form& beta);

/// Form with RationalFn coefficients (g-dependent).
struct EquivariantForm {
  CdgaPtr algebra;
  std::vector<RationalFn> coeffs;

  bool is_zero() const;
  EquivariantForm odd_part() const;
  std::string to_string() const;
  friend bool operator==(const EquivariantForm& a, const EquivariantForm& b) {
    return a.algebra == b.algebra && a.coeffs == b.coeffs;
  }
};

using FormMatrix = std::vector<std::vector<Form>>;

FormMatrix matrix_product(const FormMatrix& a, const FormMatrix& b);
/// Inverse through the degree-0 part and a terminating Neumann series.
/// Throws PreconditionError "singular degree-0 part".
FormMatrix matrix_inverse(const FormMatrix& f);

/// sum_n n!/(2n+1)! tr[g (F^-1 dF)^{2n+1}], psi-normalized (the (2 i pi)
/// factors are dropped). g acts on the diagonal with the given weights.
EquivariantForm odd_chern_matrix(const FormMatrix& f, const std::vector<HalfLaurent>& weights);

}  // namespace lambdak
