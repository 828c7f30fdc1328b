#include "lambdak/rational_fn.hpp"

namespace lambdak {

RationalFn::RationalFn(const Rational& constant) : num_(constant.get_num()), den_(constant.get_den()) {}

RationalFn::RationalFn(const HalfLaurent& num, const HalfLaurent& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw Error("zero denominator");
  normalize();
}

void RationalFn::normalize() {
  if (num_.is_zero()) {
    den_ = HalfLaurent(1);
    return;
  }
  long shift = num_.low_q() - den_.low_q();
  poly::ZPoly n = num_.q_coeffs();
  poly::ZPoly d = den_.q_coeffs();
  if (d.size() > 1) {
    poly::ZPoly g = poly::gcd(n, d);
    if (g.size() > 1) {
      n = *poly::exact_div(n, g);
      d = *poly::exact_div(d, g);
    }
  }
  Integer c = poly::content(n);
  Integer cd = poly::content(d);
  mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), cd.get_mpz_t());
  if (d.back() < 0) c = -c;
  if (c != 1) {
    for (auto& x : n) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    for (auto& x : d) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  }
  // d has nonzero constant term; any trailing zeros in n fold into the shift.
  num_ = HalfLaurent::from_q_coeffs(shift, std::move(n));
  den_ = HalfLaurent::from_q_coeffs(0, std::move(d));
}

Rational RationalFn::constant_value() const {
  if (!is_constant()) throw Error("rational function is not constant");
  Rational out(num_.constant_term(), den_.constant_term());
  out.canonicalize();
  return out;
}

RationalFn RationalFn::operator-() const { return RationalFn(-num_, den_, Unchecked{}); }

RationalFn& RationalFn::operator+=(const RationalFn& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

RationalFn& RationalFn::operator-=(const RationalFn& o) { return *this += -o; }

RationalFn& RationalFn::operator*=(const RationalFn& o) {
  if (is_zero() || o.is_zero()) return *this = RationalFn();
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

RationalFn& RationalFn::operator/=(const RationalFn& o) { return *this *= o.inverse(); }

bool RationalFn::cross_equal(const RationalFn& a, const RationalFn& b) { return a.num_ * b.den_ == b.num_ * a.den_; }

RationalFn RationalFn::inverse() const {
  if (is_zero()) throw Error("division by the zero rational function");
  return RationalFn(den_, num_);
}

RationalFn RationalFn::pow(long exp) const {
  if (exp < 0) return inverse().pow(-exp);
  return RationalFn(num_.pow(exp), den_.pow(exp));
}

std::complex<long double> RationalFn::evaluate_q(std::complex<long double> q) const {
  return num_.evaluate_q(q) / den_.evaluate_q(q);
}

std::complex<long double> RationalFn::evaluate_at_t(long double t) const {
  return num_.evaluate_at_t(t) / den_.evaluate_at_t(t);
}

std::string RationalFn::to_string() const {
  if (is_laurent()) return num_.to_string();
  HalfLaurent n = num_, d = den_;
  if (d.coeff_q(d.low_q()) < 0) {
    n = -n;
    d = -d;
  }
  auto wrap = [](const HalfLaurent& p) {
    std::size_t terms = 0;
    for (const auto& c : p.q_coeffs()) terms += (c != 0);
    return terms <= 1 ? p.to_string() : "(" + p.to_string() + ")";
  };
  return wrap(n) + "/" + wrap(d);
}

}  // namespace lambdak
