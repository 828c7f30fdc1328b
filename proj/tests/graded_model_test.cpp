#include <gtest/gtest.h>

#include <random>

#include "lambdak/gamma_model.hpp"
#include "lambdak/reconstruct.hpp"

namespace lambdak {
namespace {

// x of degree 2, y of degree 3 with dx = y: d(x^2) = 2xy gives odd exact forms.
CdgaPtr odd_exact_model() {
  return Cdga::from_json(nlohmann::json::parse(R"({
    "generators": [{"name": "x", "degree": 2}, {"name": "y", "degree": 3}],
    "relations": "truncated-polynomial",
    "d": [{"from": "x", "to": "y", "coeff": 1}],
    "top_degree": 7})"));
}

std::vector<CdgaPtr> registered() { return {Cdga::torus(), Cdga::exact_pair(), Cdga::exact_pair(8), odd_exact_model()}; }

// Basis of closed forms in degrees of the given parity (kernel of d).
std::vector<Form> closed_basis(const CdgaPtr& alg, int parity) {
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < alg->dim(); ++i) {
    if (alg->basis_degree(i) % 2 == parity) cols.push_back(i);
  }
  std::vector<std::vector<Rational>> rows(alg->dim(), std::vector<Rational>(cols.size(), Rational(0)));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    Form image = alg->basis_element(cols[c]).d();
    for (std::size_t r = 0; r < alg->dim(); ++r) rows[r][c] = image[r];
  }
  std::vector<Form> out;
  for (const auto& v : nullspace(rows, cols.size())) {
    Form f = alg->zero();
    for (std::size_t c = 0; c < cols.size(); ++c) f += v[c] * alg->basis_element(cols[c]);
    out.push_back(f);
  }
  return out;
}

std::vector<Form> parity_basis(const CdgaPtr& alg, int parity) {
  std::vector<Form> out;
  for (std::size_t i = 0; i < alg->dim(); ++i) {
    if (alg->basis_degree(i) % 2 == parity) out.push_back(alg->basis_element(i));
  }
  return out;
}

Form random_combination(const CdgaPtr& alg, const std::vector<Form>& basis, std::mt19937_64& rng, bool integer_rank) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  Form f = alg->zero();
  for (const auto& b : basis) {
    Rational c(coeff(rng), integer_rank ? 1 : 1 + (coeff(rng) + 3) % 2);
    c.canonicalize();
    f += c * b;
  }
  return f;
}

GammaElement random_gamma(const CdgaPtr& alg, std::mt19937_64& rng) {
  return GammaElement(random_combination(alg, closed_basis(alg, 0), rng, true),
                      random_combination(alg, parity_basis(alg, 1), rng, false));
}

std::vector<GammaElement> gamma_basis(const CdgaPtr& alg) {
  std::vector<GammaElement> out;
  for (const auto& w : closed_basis(alg, 0)) out.emplace_back(w, alg->zero());
  for (const auto& p : parity_basis(alg, 1)) out.emplace_back(alg->zero(), p);
  return out;
}

TEST(Cdga, TorusBasis) {
  auto t = Cdga::torus();
  ASSERT_EQ(t->dim(), 4u);
  EXPECT_EQ(t->basis_name(0), "1");
  EXPECT_EQ(t->basis_name(3), "e1*e2");
  Form e1 = t->monomial("e1"), e2 = t->monomial("e2");
  EXPECT_EQ(e1 * e2, -(e2 * e1));
  EXPECT_TRUE((e1 * e1).is_zero());
  EXPECT_EQ((e1 * e2).to_string(), "e1*e2");
}

TEST(Cdga, ExactPairDifferential) {
  auto a = Cdga::exact_pair();
  EXPECT_EQ(a->dim(), 5u);  // 1, x, y, x*y, y^2
  EXPECT_EQ(a->monomial("x").d(), a->monomial("y"));
  EXPECT_EQ(a->monomial("x*y").d(), a->monomial("y^2"));
  EXPECT_TRUE(a->monomial("y^2").d().is_zero());
  EXPECT_TRUE(a->is_exact(a->monomial("y")));
  EXPECT_FALSE(a->is_exact(a->monomial("x")));
}

TEST(Cdga, OddExactFormsAreQuotiented) {
  auto a = odd_exact_model();
  Form xy = a->monomial("x*y");
  EXPECT_EQ(a->monomial("x^2").d(), Rational(2) * xy);
  EXPECT_TRUE(a->is_exact(xy));
  GammaElement u(a->zero(), xy);
  EXPECT_EQ(u, GammaElement::zero(a));
}

TEST(Cdga, GradedCommutativityOnBasis) {
  for (const auto& alg : registered()) {
    for (std::size_t i = 0; i < alg->dim(); ++i) {
      for (std::size_t j = 0; j < alg->dim(); ++j) {
        Form a = alg->basis_element(i), b = alg->basis_element(j);
        Rational s = (alg->basis_degree(i) * alg->basis_degree(j)) % 2 == 0 ? 1 : -1;
        EXPECT_EQ(a * b, s * (b * a));
      }
    }
  }
}

TEST(Cdga, RejectsBadDifferentials) {
  using G = Cdga::Generator;
  // d^2 a = c.
  EXPECT_THROW(Cdga::build({G{"a", 1}, G{"b", 2}, G{"c", 3}}, Cdga::Relations::Exterior, -1,
                           {{"a", "b", 1}, {"b", "c", 1}}),
               InputError);
  // a^2 = 0 in the exterior algebra but d(a)a + a d(a) = 2ab.
  EXPECT_THROW(Cdga::build({G{"a", 2}, G{"b", 3}}, Cdga::Relations::Exterior, -1, {{"a", "b", 1}}), InputError);
  // Wrong degree.
  EXPECT_THROW(Cdga::build({G{"a", 1}, G{"b", 3}}, Cdga::Relations::Exterior, -1, {{"a", "b", 1}}), InputError);
  EXPECT_THROW(Cdga::from_json(nlohmann::json::parse(R"({"generators": [{"name": "a"}]})")), InputError);
}

TEST(GammaModel, StarProductExamples) {
  auto t = Cdga::torus();
  Form one = t->unit(), e1 = t->monomial("e1"), e2 = t->monomial("e2"), e12 = t->monomial("e1*e2");
  GammaElement x(one + e12, e1), y(one, e2);
  EXPECT_EQ(x * y, GammaElement(one + e12, e1 + e2));
  EXPECT_EQ(GammaElement::one(t) * x, x);
}

TEST(GammaModel, ExhaustiveRingAxiomsOnBasis) {
  for (const auto& alg : registered()) {
    auto basis = gamma_basis(alg);
    GammaElement one = GammaElement::one(alg);
    for (const auto& a : basis) {
      EXPECT_EQ(one * a, a);
      for (const auto& b : basis) {
        EXPECT_EQ(a * b, b * a);
        for (const auto& c : basis) EXPECT_EQ((a * b) * c, a * (b * c));
      }
    }
  }
}

TEST(GammaModel, RandomRingAxioms) {
  std::mt19937_64 rng(11);
  for (const auto& alg : registered()) {
    for (int i = 0; i < 30; ++i) {
      GammaElement a = random_gamma(alg, rng), b = random_gamma(alg, rng), c = random_gamma(alg, rng);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
    }
  }
}

TEST(GammaModel, StarAgreesWithExpansion) {
  // Oracle: the product written out on components with independent forms.
  auto a = Cdga::exact_pair();
  Form x = a->monomial("x"), y = a->monomial("y");
  GammaElement u(a->unit() + Rational(2) * y, x), v(Rational(3) * a->unit(), Rational(5) * x);
  // d(x) = y, so -dphi1 phi2 = -5 y x = -5 x y.
  GammaElement expected(Rational(3) * a->unit() + Rational(6) * y,
                        Rational(5) * x + Rational(10) * (y * x) + Rational(3) * x - Rational(5) * a->monomial("x*y"));
  EXPECT_EQ(u * v, expected);
}

TEST(GammaModel, AdamsOperations) {
  auto t = Cdga::torus();
  Form one = t->unit(), e1 = t->monomial("e1"), e12 = t->monomial("e1*e2");
  GammaElement x(one + e12, e1);
  EXPECT_EQ(adams_gamma(2, x), GammaElement(one + Rational(2) * e12, Rational(2) * e1));
  EXPECT_EQ(adams_gamma(1, x), x);
  std::mt19937_64 rng(5);
  for (const auto& alg : registered()) {
    for (int i = 0; i < 20; ++i) {
      GammaElement a = random_gamma(alg, rng), b = random_gamma(alg, rng);
      EXPECT_EQ(adams_gamma(2, adams_gamma(3, a)), adams_gamma(6, a));
      EXPECT_EQ(adams_gamma(3, a * b), adams_gamma(3, a) * adams_gamma(3, b));
      // Componentwise oracle: degree-l part scaled by k^l.
      GammaElement scaled = GammaElement::zero(alg);
      for (int l = 0; 2 * l <= alg->top_degree() + 1; ++l) scaled += Rational(ipow(2, l)) * a.graded_part(l);
      EXPECT_EQ(adams_gamma(2, a), scaled);
    }
  }
}

TEST(GammaModel, LambdaBasics) {
  auto t = Cdga::torus();
  std::mt19937_64 rng(3);
  GammaElement x = random_gamma(t, rng);
  EXPECT_EQ(lambda_gamma(0, x), GammaElement::one(t));
  EXPECT_EQ(lambda_gamma(1, x), x);
  EXPECT_EQ(lambda_gamma(2, GammaElement::scalar(t, 2)), GammaElement::one(t));
  EXPECT_EQ(lambda_gamma(3, GammaElement::scalar(t, 2)), GammaElement::zero(t));
  // (1+t)^{-1}: lambda^k(-1) = (-1)^k.
  EXPECT_EQ(lambda_gamma(3, GammaElement::scalar(t, -1)), GammaElement::scalar(t, -1));
  EXPECT_THROW(lambda_gamma(2, GammaElement::scalar(t, Rational(1, 2))), PreconditionError);
}

TEST(GammaModel, LambdaOfLineLikeElement) {
  // For l = 1 + c with c nilpotent of degree 2: lambda_t(l) = 1 + t(1 + c), so lambda^2 = 0.
  auto t = Cdga::torus();
  GammaElement line(t->unit() + t->monomial("e1*e2"), t->monomial("e1"));
  EXPECT_EQ(lambda_gamma(2, line), GammaElement::zero(t));
  EXPECT_EQ(lambda_gamma(3, line + line), GammaElement::zero(t));
  EXPECT_EQ(lambda_gamma(2, line + line), line * line);
}

TEST(GammaModel, LambdaIsExponential) {
  std::mt19937_64 rng(17);
  for (const auto& alg : registered()) {
    for (int i = 0; i < 10; ++i) {
      GammaElement a = random_gamma(alg, rng), b = random_gamma(alg, rng);
      for (long k = 0; k <= 5; ++k) {
        GammaElement conv = GammaElement::zero(alg);
        for (long j = 0; j <= k; ++j) conv += lambda_gamma(j, a) * lambda_gamma(k - j, b);
        EXPECT_EQ(lambda_gamma(k, a + b), conv) << "k=" << k;
      }
    }
  }
}

TEST(GammaModel, LambdaCommutesWithFormInclusion) {
  std::mt19937_64 rng(23);
  for (const auto& alg : registered()) {
    for (int i = 0; i < 10; ++i) {
      Form w = random_combination(alg, closed_basis(alg, 0), rng, true);
      for (long k = 0; k <= 4; ++k) {
        EXPECT_EQ(lambda_gamma(k, GammaElement(w, alg->zero())), GammaElement(lambda_form(k, w), alg->zero()));
      }
    }
  }
}

TEST(GammaModel, ChernSimonsProductIdentity) {
  auto t = Cdga::torus();
  Form one = t->unit(), z = t->zero();
  EXPECT_TRUE(cs_product_identity_check(one, one, one, one, z, z));
  Form e1 = t->monomial("e1");
  EXPECT_TRUE(cs_product_identity_check(z, z, one, one, e1, z));

  std::mt19937_64 rng(29);
  for (const auto& alg : {Cdga::exact_pair(), Cdga::exact_pair(8), odd_exact_model()}) {
    auto even = closed_basis(alg, 0);
    auto odd = parity_basis(alg, 1);
    for (int i = 0; i < 40; ++i) {
      Form a0 = random_combination(alg, even, rng, false);
      Form b0 = random_combination(alg, even, rng, false);
      Form alpha = random_combination(alg, odd, rng, false);
      Form beta = random_combination(alg, odd, rng, false);
      EXPECT_TRUE(cs_product_identity_check(a0, a0 + alpha.d(), b0, b0 + beta.d(), alpha, beta));
    }
  }
  auto a = Cdga::exact_pair();
  EXPECT_THROW(cs_product_identity_check(a->zero(), a->zero(), a->zero(), a->zero(), a->monomial("x"), a->zero()),
               PreconditionError);
}

TEST(GammaModel, OddChernOfConstantMatrices) {
  auto a = Cdga::exact_pair();
  FormMatrix id{{a->unit(), a->zero()}, {a->zero(), a->unit()}};
  EXPECT_TRUE(odd_chern_matrix(id, {HalfLaurent(1), HalfLaurent::g_monomial(1)}).is_zero());
  FormMatrix c{{Rational(2) * a->unit(), a->unit()}, {a->unit(), a->unit()}};
  EXPECT_TRUE(odd_chern_matrix(c, {HalfLaurent(1), HalfLaurent(1)}).is_zero());
  FormMatrix singular{{a->unit(), a->unit()}, {a->unit(), a->unit()}};
  EXPECT_THROW(odd_chern_matrix(singular, {HalfLaurent(1), HalfLaurent(1)}), PreconditionError);
  auto t = Cdga::torus();
  FormMatrix nil{{t->unit() + t->monomial("e1")}};
  EXPECT_TRUE(odd_chern_matrix(nil, {HalfLaurent(1)}).is_zero());
}

TEST(GammaModel, OddChernOfOnePlusX) {
  // (1+x)^{-1} = 1 - x since x^2 = 0; X = F^{-1} dF = y - x y.
  // X^3 = y^3 - 3 x y^3, so up to degree 8 the sum is w (X + X^3 / 6).
  auto a = Cdga::exact_pair(8);
  HalfLaurent w = HalfLaurent::q_monomial(3);
  FormMatrix f{{a->unit() + a->monomial("x")}};
  EquivariantForm got = odd_chern_matrix(f, {w});
  Form x = a->monomial("x"), y = a->monomial("y");
  Form expected = y - x * y + Rational(1, 6) * (a->monomial("y^3") - Rational(3) * a->monomial("x*y^3"));
  for (std::size_t i = 0; i < a->dim(); ++i) EXPECT_EQ(got.coeffs[i], RationalFn(expected[i]) * RationalFn(w)) << i;

  auto small = Cdga::exact_pair(4);
  FormMatrix g{{small->unit() + small->monomial("x"), small->zero()}, {small->zero(), Rational(2) * small->unit()}};
  EquivariantForm got2 = odd_chern_matrix(g, {HalfLaurent::g_monomial(1), HalfLaurent::g_monomial(-1)});
  Form exp2 = small->monomial("y") - small->monomial("x*y");
  for (std::size_t i = 0; i < small->dim(); ++i)
    EXPECT_EQ(got2.coeffs[i], RationalFn(exp2[i]) * RationalFn(HalfLaurent::g_monomial(1)));
  EXPECT_EQ(got2.odd_part().coeffs[small->dim() - 2], got2.coeffs[small->dim() - 2]);
}

TEST(GammaModel, MatrixInverse) {
  auto a = Cdga::exact_pair(8);
  std::mt19937_64 rng(41);
  auto all = parity_basis(a, 0);
  auto odd = parity_basis(a, 1);
  all.insert(all.end(), odd.begin(), odd.end());
  for (int i = 0; i < 10; ++i) {
    FormMatrix f(2, std::vector<Form>(2, a->zero()));
    for (auto& row : f)
      for (auto& e : row) e = random_combination(a, all, rng, false);
    f[0][0] += Rational(7) * a->unit();
    f[1][1] += Rational(5) * a->unit();
    FormMatrix prod = matrix_product(f, matrix_inverse(f));
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) EXPECT_EQ(prod[r][c], r == c ? a->unit() : a->zero());
  }
}

}  // namespace
}  // namespace lambdak
