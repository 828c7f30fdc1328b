#include "lambdak/half_laurent.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace lambdak {

HalfLaurent::HalfLaurent(long constant) : HalfLaurent(Integer(constant)) {}

HalfLaurent::HalfLaurent(const Integer& constant) {
  if (constant != 0) coeffs_.push_back(constant);
}

HalfLaurent HalfLaurent::q_monomial(long q_exp, const Integer& coeff) {
  HalfLaurent out;
  if (coeff == 0) return out;
  out.low_ = q_exp;
  out.coeffs_.push_back(coeff);
  return out;
}

HalfLaurent HalfLaurent::g_monomial(long g_exp, const Integer& coeff) { return q_monomial(2 * g_exp, coeff); }

HalfLaurent HalfLaurent::from_q_coeffs(long low, poly::ZPoly coeffs) {
  HalfLaurent out;
  out.low_ = low;
  out.coeffs_ = std::move(coeffs);
  out.normalize();
  return out;
}

HalfLaurent HalfLaurent::from_g_coeffs(long low, const std::vector<Integer>& coeffs) {
  poly::ZPoly q;
  if (!coeffs.empty()) q.assign(2 * coeffs.size() - 1, Integer(0));
  for (std::size_t i = 0; i < coeffs.size(); ++i) q[2 * i] = coeffs[i];
  return from_q_coeffs(2 * low, std::move(q));
}

void HalfLaurent::normalize() {
  poly::trim(coeffs_);
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
    low_ += static_cast<long>(lead);
  }
  if (coeffs_.empty()) low_ = 0;
}

bool HalfLaurent::is_integral() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0 && ((low_ + static_cast<long>(i)) % 2 != 0)) return false;
  }
  return true;
}

Integer HalfLaurent::coeff_q(long q_exp) const {
  long idx = q_exp - low_;
  if (idx < 0 || idx >= static_cast<long>(coeffs_.size())) return 0;
  return coeffs_[idx];
}

HalfLaurent HalfLaurent::operator-() const {
  HalfLaurent out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

HalfLaurent& HalfLaurent::operator+=(const HalfLaurent& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  long lo = std::min(low_, other.low_);
  long hi = std::max(high_q(), other.high_q());
  poly::ZPoly sum(hi - lo + 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) sum[low_ - lo + i] += coeffs_[i];
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) sum[other.low_ - lo + i] += other.coeffs_[i];
  low_ = lo;
  coeffs_ = std::move(sum);
  normalize();
  return *this;
}

HalfLaurent& HalfLaurent::operator-=(const HalfLaurent& other) { return *this += -other; }

HalfLaurent& HalfLaurent::operator*=(const HalfLaurent& other) {
  if (is_zero() || other.is_zero()) return *this = HalfLaurent();
  coeffs_ = poly::mul(coeffs_, other.coeffs_);
  low_ += other.low_;
  normalize();
  return *this;
}

bool operator<(const HalfLaurent& a, const HalfLaurent& b) {
  if (a.low_ != b.low_) return a.low_ < b.low_;
  if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() < b.coeffs_.size();
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] != b.coeffs_[i]) return a.coeffs_[i] < b.coeffs_[i];
  }
  return false;
}

bool HalfLaurent::is_unit() const { return coeffs_.size() == 1 && (coeffs_[0] == 1 || coeffs_[0] == -1); }

HalfLaurent HalfLaurent::pow(long exp) const {
  if (exp < 0) {
    if (!is_unit()) throw Error("not invertible in Laurent ring");
    return q_monomial(-low_ * (-exp), ((-exp) % 2 == 0) ? Integer(1) : coeffs_[0]);
  }
  HalfLaurent result(1);
  HalfLaurent base = *this;
  while (exp > 0) {
    if (exp & 1) result *= base;
    exp >>= 1;
    if (exp > 0) base *= base;
  }
  return result;
}

HalfLaurent HalfLaurent::shift_q(long shift) const {
  HalfLaurent out = *this;
  if (!out.is_zero()) out.low_ += shift;
  return out;
}

HalfLaurent HalfLaurent::invert_variable() const {
  if (is_zero()) return {};
  poly::ZPoly rev(coeffs_.rbegin(), coeffs_.rend());
  return from_q_coeffs(-high_q(), std::move(rev));
}

std::complex<long double> HalfLaurent::evaluate_q(std::complex<long double> q) const {
  std::complex<long double> acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * q + static_cast<long double>(it->get_d());
  return acc * std::pow(q, static_cast<long double>(low_));
}

std::complex<long double> HalfLaurent::evaluate_at_t(long double t) const {
  const long double pi = std::numbers::pi_v<long double>;
  std::complex<long double> acc = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    long double angle = pi * t * static_cast<long double>(low_ + static_cast<long>(i));
    acc += static_cast<long double>(coeffs_[i].get_d()) * std::complex<long double>(std::cos(angle), std::sin(angle));
  }
  return acc;
}

std::string g_power_string(long q_exp) {
  if (q_exp == 0) return "";
  if (q_exp == 2) return "g";
  if (q_exp % 2 == 0) return "g^" + std::to_string(q_exp / 2);
  return "g^(" + std::to_string(q_exp) + "/2)";
}

std::string HalfLaurent::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Integer& c = coeffs_[i];
    if (c == 0) continue;
    long e = low_ + static_cast<long>(i);
    std::string power = g_power_string(e);
    Integer mag = abs(c);
    if (c < 0) out << "-";
    else if (!first) out << "+";
    if (power.empty()) out << mag.get_str();
    else {
      if (mag != 1) out << mag.get_str();
      out << power;
    }
    first = false;
  }
  return out.str();
}

}  // namespace lambdak
