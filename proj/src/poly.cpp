#include "lambdak/poly.hpp"

#include <map>
#include <mutex>

namespace lambdak::poly {

Integer content(const ZPoly& p) {
  Integer g = 0;
  for (const auto& c : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

ZPoly primitive_part(const ZPoly& p) {
  if (p.empty()) return {};
  Integer c = content(p);
  if (p.back() < 0) c = -c;
  ZPoly out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) mpz_divexact(out[i].get_mpz_t(), p[i].get_mpz_t(), c.get_mpz_t());
  return out;
}

std::optional<ZPoly> exact_div(const ZPoly& a, const ZPoly& b) {
  if (b.empty()) throw Error("polynomial division by zero");
  if (a.empty()) return ZPoly{};
  if (a.size() < b.size()) return std::nullopt;
  ZPoly rem = a;
  ZPoly quot(a.size() - b.size() + 1);
  const Integer& lead = b.back();
  for (long i = degree(a) - degree(b); i >= 0; --i) {
    const Integer& top = rem[i + b.size() - 1];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t())) return std::nullopt;
    Integer q = top / lead;
    quot[i] = q;
    for (std::size_t j = 0; j < b.size(); ++j) rem[i + j] -= q * b[j];
  }
  for (const auto& c : rem)
    if (c != 0) return std::nullopt;
  trim(quot);
  return quot;
}

namespace {

// Pseudo-remainder of a by b: lc(b)^(deg a - deg b + 1) a mod b.
ZPoly pseudo_rem(ZPoly a, const ZPoly& b) {
  const Integer& lead = b.back();
  while (!a.empty() && a.size() >= b.size()) {
    Integer top = a.back();
    std::size_t shift = a.size() - b.size();
    for (auto& c : a) c *= lead;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= top * b[j];
    trim(a);
  }
  return a;
}

}  // namespace

ZPoly gcd(const ZPoly& a, const ZPoly& b) {
  if (a.empty()) return primitive_part(b);
  if (b.empty()) return primitive_part(a);
  ZPoly x = primitive_part(a);
  ZPoly y = primitive_part(b);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    ZPoly r = pseudo_rem(x, y);
    x = std::move(y);
    y = primitive_part(r);
  }
  return primitive_part(x);
}

ZPoly cyclotomic(long n) {
  if (n < 1) throw Error("cyclotomic polynomial of non-positive order");
  static std::mutex lock;
  static std::map<long, ZPoly> cache;
  {
    std::lock_guard<std::mutex> guard(lock);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  // x^n - 1 = prod_{d | n} Phi_d(x)
  ZPoly out(n + 1);
  out[0] = -1;
  out[n] = 1;
  for (long d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    out = *exact_div(out, cyclotomic(d));
  }
  std::lock_guard<std::mutex> guard(lock);
  cache.emplace(n, out);
  return out;
}

QPoly to_q(const ZPoly& p) {
  QPoly out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i];
  return out;
}

void divmod(const QPoly& a, const QPoly& b, QPoly& quot, QPoly& rem) {
  if (b.empty()) throw Error("polynomial division by zero");
  rem = a;
  trim(rem);
  quot.clear();
  if (rem.size() < b.size()) return;
  quot.assign(rem.size() - b.size() + 1, Rational(0));
  for (long i = degree(rem) - degree(b); i >= 0; --i) {
    Rational q = rem[i + b.size() - 1] / b.back();
    if (q == 0) continue;
    quot[i] = q;
    for (std::size_t j = 0; j < b.size(); ++j) rem[i + j] -= q * b[j];
  }
  trim(quot);
  trim(rem);
}

QPoly mod(const QPoly& a, const QPoly& b) {
  QPoly q, r;
  divmod(a, b, q, r);
  return r;
}

QPoly inverse_mod(const QPoly& a, const QPoly& m) {
  // Extended Euclid: keep s with s*a = r (mod m).
  QPoly r0 = m, r1 = mod(a, m);
  QPoly s0, s1{Rational(1)};
  while (!r1.empty()) {
    QPoly q, r;
    divmod(r0, r1, q, r);
    QPoly s = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.size() != 1) throw PreconditionError("element is not invertible modulo the given polynomial");
  Rational scale = 1 / r0[0];
  for (auto& c : s0) c *= scale;
  return mod(s0, m);
}

ZPoly clear_denominators(const QPoly& p) {
  Integer l = 1;
  for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  ZPoly out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i].get_num() * (l / p[i].get_den());
  trim(out);
  return out;
}

}  // namespace lambdak::poly
