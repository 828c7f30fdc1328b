#include "lambdak/gamma_model.hpp"

#include "lambdak/lambda_series.hpp"

#include <sstream>

namespace lambdak {

namespace {

bool only_parity(const Form& f, int parity) {
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (f[i] != 0 && f.algebra()->basis_degree(i) % 2 != parity) return false;
  }
  return true;
}

// Integer a such that f = a + (positive degree).
Integer integer_rank(const Form& f) {
  const Rational& a = f[0];
  if (a.get_den() != 1) throw PreconditionError("rank must be integer");
  return a.get_num();
}

Rational scale_for(long k, int l) { return Rational(ipow(Integer(k), static_cast<unsigned long>(l))); }

}  // namespace

GammaElement::GammaElement(Form omega, Form phi) : omega_(std::move(omega)), phi_(std::move(phi)) {
  if (omega_.algebra() != phi_.algebra()) throw Error("mismatched algebras");
  if (!only_parity(omega_, 0)) throw PreconditionError("omega must have even degree");
  if (!only_parity(phi_, 1)) throw PreconditionError("phi must have odd degree");
  if (!omega_.d().is_zero()) throw PreconditionError("omega must be closed");
  phi_ = phi_.algebra()->reduce_mod_exact(phi_);
}

GammaElement GammaElement::one(const CdgaPtr& algebra) { return GammaElement(algebra->unit(), algebra->zero()); }
GammaElement GammaElement::zero(const CdgaPtr& algebra) { return GammaElement(algebra->zero(), algebra->zero()); }
GammaElement GammaElement::scalar(const CdgaPtr& algebra, const Rational& c) {
  return GammaElement(algebra->scalar(c), algebra->zero());
}

GammaElement GammaElement::graded_part(int l) const {
  return GammaElement(omega_.degree_part(2 * l), phi_.degree_part(2 * l - 1));
}

GammaElement GammaElement::operator-() const { return GammaElement(-omega_, -phi_); }

GammaElement& GammaElement::operator+=(const GammaElement& o) {
  omega_ += o.omega_;
  phi_ = algebra()->reduce_mod_exact(phi_ + o.phi_);
  return *this;
}

GammaElement& GammaElement::operator-=(const GammaElement& o) { return *this += -o; }

GammaElement operator*(const Rational& s, const GammaElement& a) { return GammaElement(s * a.omega_, s * a.phi_); }

GammaElement operator*(const GammaElement& a, const GammaElement& b) { return star_product(a, b); }

std::string GammaElement::to_string() const { return "(" + omega_.to_string() + ", " + phi_.to_string() + ")"; }

GammaElement star_product(const GammaElement& x, const GammaElement& y) {
  if (x.algebra() != y.algebra()) throw Error("mismatched algebras");
  return GammaElement(x.omega() * y.omega(), x.omega() * y.phi() + x.phi() * y.omega() - x.phi().d() * y.phi());
}

Form adams_form(long k, const Form& omega) {
  if (!only_parity(omega, 0)) throw PreconditionError("Adams operation on forms needs even degree");
  std::vector<Rational> c = omega.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] != 0) c[i] *= scale_for(k, omega.algebra()->basis_degree(i) / 2);
  }
  return Form(omega.algebra(), std::move(c));
}

GammaElement adams_gamma(long k, const GammaElement& x) {
  if (k < 1) throw InputError("Adams index must be positive");
  std::vector<Rational> p = x.phi().coeffs();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != 0) p[i] *= scale_for(k, (x.algebra()->basis_degree(i) + 1) / 2);
  }
  return GammaElement(adams_form(k, x.omega()), Form(x.algebra(), std::move(p)));
}

GammaElement lambda_gamma(long k, const GammaElement& x) {
  Integer a = integer_rank(x.omega());
  const auto& alg = x.algebra();
  GammaElement reduced = x - GammaElement::scalar(alg, Rational(a));
  return lambda_series<GammaElement>(
      k, a, reduced, GammaElement::one(alg), [](long j, const GammaElement& y) { return adams_gamma(j, y); },
      [](const GammaElement& u, const GammaElement& v) { return star_product(u, v); });
}

Form lambda_form(long k, const Form& omega) {
  if (!omega.d().is_zero()) throw PreconditionError("omega must be closed");
  Integer a = integer_rank(omega);
  const auto& alg = omega.algebra();
  Form reduced = omega - alg->scalar(Rational(a));
  return lambda_series<Form>(
      k, a, reduced, alg->unit(), [](long j, const Form& y) { return adams_form(j, y); },
      [](const Form& u, const Form& v) { return u * v; });
}

bool cs_product_identity_check(const Form& a0, const Form& a1, const Form& b0, const Form& b1, const Form& alpha,
                               const Form& beta) {
  for (const Form* f : {&a0, &a1, &b0, &b1}) {
    if (!only_parity(*f, 0) || !f->d().is_zero()) throw PreconditionError("a0, a1, b0, b1 must be closed even forms");
  }
  if (!only_parity(alpha, 1) || !only_parity(beta, 1)) throw PreconditionError("alpha, beta must be odd forms");
  if (!(alpha.d() == a1 - a0)) throw PreconditionError("d alpha != a1 - a0");
  if (!(beta.d() == b1 - b0)) throw PreconditionError("d beta != b1 - b0");
  GammaElement lhs = star_product(GammaElement(a1, alpha), GammaElement(b1, beta));
  GammaElement rhs(a1 * b1, alpha * b1 + a0 * beta);
  return lhs == rhs;
}

// ---------------------------------------------------------------------------

bool EquivariantForm::is_zero() const {
  for (const auto& c : coeffs) {
    if (!c.is_zero()) return false;
  }
  return true;
}

EquivariantForm EquivariantForm::odd_part() const {
  EquivariantForm out = *this;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (algebra->basis_degree(i) % 2 == 0) out.coeffs[i] = RationalFn(0);
  }
  return out;
}

std::string EquivariantForm::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    if (!first) out << " + ";
    out << "(" << coeffs[i].to_string() << ")";
    if (algebra->basis_name(i) != "1") out << "*" << algebra->basis_name(i);
    first = false;
  }
  return first ? "0" : out.str();
}

namespace {

void check_square(const FormMatrix& f) {
  if (f.empty()) throw InputError("empty matrix");
  for (const auto& row : f) {
    if (row.size() != f.size()) throw InputError("matrix must be square");
  }
}

bool matrix_is_zero(const FormMatrix& m) {
  for (const auto& row : m) {
    for (const auto& e : row) {
      if (!e.is_zero()) return false;
    }
  }
  return true;
}

}  // namespace

FormMatrix matrix_product(const FormMatrix& a, const FormMatrix& b) {
  const std::size_t n = a.size(), m = b.front().size(), inner = b.size();
  const auto& alg = a.front().front().algebra();
  FormMatrix out(n, std::vector<Form>(m, alg->zero()));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != inner) throw InputError("matrix shapes do not match");
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < inner; ++k) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

FormMatrix matrix_inverse(const FormMatrix& f) {
  check_square(f);
  const std::size_t n = f.size();
  const auto& alg = f[0][0].algebra();
  // Gauss-Jordan on the degree-0 part.
  std::vector<std::vector<Rational>> aug(n, std::vector<Rational>(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = f[i][j][0];
    aug[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pick = col;
    while (pick < n && aug[pick][col] == 0) ++pick;
    if (pick == n) throw PreconditionError("singular degree-0 part");
    std::swap(aug[col], aug[pick]);
    Rational inv = 1 / aug[col][col];
    for (auto& x : aug[col]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || aug[r][col] == 0) continue;
      Rational c = aug[r][col];
      for (std::size_t j = 0; j < 2 * n; ++j) aug[r][j] -= c * aug[col][j];
    }
  }
  FormMatrix f0_inv(n, std::vector<Form>(n, alg->zero()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) f0_inv[i][j] = alg->scalar(aug[i][n + j]);
  }
  // F = F0 (1 + M) with M = F0^-1 (F - F0) nilpotent; F^-1 = sum (-M)^j F0^-1.
  FormMatrix nil(n, std::vector<Form>(n, alg->zero()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) nil[i][j] = f[i][j] - alg->scalar(f[i][j][0]);
  }
  FormMatrix m = matrix_product(f0_inv, nil);
  for (auto& row : m) {
    for (auto& e : row) e = -e;
  }
  FormMatrix term = f0_inv;
  FormMatrix sum = f0_inv;
  for (int step = 0; step <= alg->top_degree(); ++step) {
    term = matrix_product(m, term);
    if (matrix_is_zero(term)) break;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) sum[i][j] += term[i][j];
    }
  }
  return sum;
}

EquivariantForm odd_chern_matrix(const FormMatrix& f, const std::vector<HalfLaurent>& weights) {
  check_square(f);
  const std::size_t n = f.size();
  if (weights.size() != n) throw InputError("one weight per row is required");
  const auto& alg = f[0][0].algebra();
  FormMatrix df(n, std::vector<Form>(n, alg->zero()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) df[i][j] = f[i][j].d();
  }
  FormMatrix x = matrix_product(matrix_inverse(f), df);
  FormMatrix x2 = matrix_product(x, x);
  EquivariantForm out{alg, std::vector<RationalFn>(alg->dim(), RationalFn(0))};
  FormMatrix power = x;  // X^{2n+1}
  for (long k = 0; 2 * k + 1 <= alg->top_degree(); ++k) {
    if (k > 0) power = matrix_product(power, x2);
    if (matrix_is_zero(power)) break;
    Rational c(factorial(k), factorial(2 * k + 1));
    c.canonicalize();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t b = 0; b < alg->dim(); ++b) {
        if (power[i][i][b] == 0) continue;
        out.coeffs[b] += RationalFn(c * power[i][i][b]) * RationalFn(weights[i]);
      }
    }
  }
  return out;
}

}  // namespace lambdak
