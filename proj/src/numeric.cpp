#include "lambdak/numeric.hpp"

namespace lambdak {

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

Integer factorial(long n) {
  if (n < 0) throw Error("factorial of a negative number");
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

Integer ipow(const Integer& base, unsigned long exp) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

Rational rpow(const Rational& base, long exp) {
  if (exp >= 0) {
    Rational out(ipow(base.get_num(), exp), ipow(base.get_den(), exp));
    out.canonicalize();
    return out;
  }
  if (base == 0) throw Error("zero raised to a negative power");
  Rational out(ipow(base.get_den(), -exp), ipow(base.get_num(), -exp));
  out.canonicalize();
  return out;
}

Rational parse_rational(const std::string& text) {
  Rational out;
  if (text.empty() || out.set_str(text, 10) != 0) throw InputError("not a rational number: '" + text + "'");
  if (out.get_den() == 0) throw InputError("zero denominator in '" + text + "'");
  out.canonicalize();
  return out;
}

std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace lambdak
