#include "cycfuse/cycint.hpp"

#include <cmath>
#include <numeric>

namespace cycfuse {

CycInt::CycInt(std::uint32_t p, std::vector<long long> c, long long den)
    : p_(p), c_(std::move(c)), den_(den) {
  normalize();
}

void CycInt::normalize() {
  if (den_ == 0) raise(errc::overflow, "zero denominator");
  if (den_ < 0) {
    den_ = -den_;
    for (auto& v : c_) v = -v;
  }
  long long g = den_;
  for (long long v : c_) g = std::gcd(g, v < 0 ? -v : v);
  if (g > 1) {
    den_ /= g;
    for (auto& v : c_) v /= g;
  }
}

CycInt CycInt::integer(std::uint32_t p, long long v) {
  std::vector<long long> c(p - 1, 0);
  c[0] = v;
  return CycInt(p, std::move(c), 1);
}

CycInt CycInt::rational(std::uint32_t p, Rat r) {
  std::vector<long long> c(p - 1, 0);
  c[0] = r.num;
  return CycInt(p, std::move(c), r.den);
}

CycInt CycInt::root_power(std::uint32_t p, std::uint64_t e) {
  std::vector<long long> raw(p, 0);
  raw[e % p] = 1;
  return from_exponent_counts(p, raw);
}

CycInt CycInt::from_exponent_counts(std::uint32_t p, std::span<const long long> raw,
                                    long long den) {
  if (raw.size() != p) raise(errc::index_out_of_range, "need p exponent slots");
  std::vector<long long> c(p - 1);
  for (std::uint32_t j = 0; j + 1 < p; ++j) c[j] = checked_add(raw[j], -raw[p - 1]);
  return CycInt(p, std::move(c), den);
}

bool CycInt::is_zero() const {
  for (long long v : c_)
    if (v) return false;
  return true;
}

bool CycInt::is_rational() const {
  for (std::size_t j = 1; j < c_.size(); ++j)
    if (c_[j]) return false;
  return true;
}

Rat CycInt::as_rational() const {
  if (!is_rational()) raise(errc::unsupported_case, "value is not rational: " + str());
  return Rat(c_[0], den_);
}

long long CycInt::as_integer() const {
  Rat r = as_rational();
  if (r.den != 1) raise(errc::unsupported_case, "value is not integral: " + str());
  return r.num;
}

CycInt CycInt::galois(std::uint32_t t) const {
  t %= p_;
  if (t == 0) raise(errc::not_coprime, "galois exponent divisible by p");
  std::vector<long long> raw(p_, 0);
  for (std::uint32_t j = 0; j + 1 < p_; ++j)
    raw[std::uint64_t(j) * t % p_] = checked_add(raw[std::uint64_t(j) * t % p_], c_[j]);
  return from_exponent_counts(p_, raw, den_);
}

CycInt CycInt::operator-() const {
  std::vector<long long> c(c_);
  for (auto& v : c) v = -v;
  return CycInt(p_, std::move(c), den_);
}

std::pair<CycInt, CycInt> CycInt::promote(const CycInt& a, const CycInt& b) {
  if (a.p_ == b.p_) return {a, b};
  if (a.is_rational()) return {rational(b.p_, Rat(a.c_[0], a.den_)), b};
  if (b.is_rational()) return {a, rational(a.p_, Rat(b.c_[0], b.den_))};
  raise(errc::field_mismatch, "mixing zeta_" + std::to_string(a.p_) + " with zeta_" +
                                  std::to_string(b.p_));
}

CycInt operator+(const CycInt& a0, const CycInt& b0) {
  auto [a, b] = CycInt::promote(a0, b0);
  std::vector<long long> c(a.c_.size());
  for (std::size_t j = 0; j < c.size(); ++j)
    c[j] = checked_add(checked_mul(a.c_[j], b.den_), checked_mul(b.c_[j], a.den_));
  return CycInt(a.p_, std::move(c), checked_mul(a.den_, b.den_));
}

CycInt operator-(const CycInt& a, const CycInt& b) { return a + (-b); }

CycInt operator*(const CycInt& a0, const CycInt& b0) {
  auto [a, b] = CycInt::promote(a0, b0);
  std::uint32_t p = a.p_;
  std::vector<long long> raw(p, 0);
  for (std::uint32_t i = 0; i + 1 < p; ++i) {
    if (!a.c_[i]) continue;
    for (std::uint32_t j = 0; j + 1 < p; ++j) {
      if (!b.c_[j]) continue;
      std::uint32_t k = (i + j) % p;
      raw[k] = checked_add(raw[k], checked_mul(a.c_[i], b.c_[j]));
    }
  }
  return CycInt::from_exponent_counts(p, raw, checked_mul(a.den_, b.den_));
}

CycInt CycInt::scaled(Rat r) const {
  std::vector<long long> c(c_);
  for (auto& v : c) v = checked_mul(v, r.num);
  return CycInt(p_, std::move(c), checked_mul(den_, r.den));
}

bool operator==(const CycInt& a0, const CycInt& b0) {
  if (a0.p_ != b0.p_ && !(a0.is_rational() || b0.is_rational())) return false;
  auto [a, b] = CycInt::promote(a0, b0);
  return a.den_ == b.den_ && a.c_ == b.c_;
}

std::complex<double> CycInt::to_complex() const {
  std::complex<double> s = 0;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (!c_[j]) continue;
    double ang = 2.0 * M_PI * double(j) / double(p_);
    s += double(c_[j]) * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return s / double(den_);
}

std::string CycInt::str() const {
  if (is_rational()) return Rat(c_[0], den_).str();
  std::string s;
  bool first = true;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    long long v = c_[j];
    if (!v) continue;
    if (!first && v > 0) s += "+";
    if (v == -1 && j > 0)
      s += "-";
    else if (!(v == 1 && j > 0))
      s += std::to_string(v);
    if (j > 0) {
      if (v == 1 || v == -1)
        s += "z";
      else
        s += "*z";
      if (j > 1) s += "^" + std::to_string(j);
    }
    first = false;
  }
  if (s.empty()) s = "0";
  if (den_ != 1) s = "(" + s + ")/" + std::to_string(den_);
  return s;
}

}  // namespace cycfuse
