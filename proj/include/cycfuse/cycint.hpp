#pragma once
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cycfuse/util.hpp"

namespace cycfuse {

// Element of Q(zeta_p), p prime, held exactly as (sum_{j<p-1} c_j zeta^j) / den
// over the power basis zeta^0..zeta^{p-2}. Representation is canonical: the
// relation 1 + zeta + ... + zeta^{p-1} = 0 eliminates zeta^{p-1}, den > 0, and
// gcd of all coefficients with den is 1. Values that happen to be rational mix
// freely with any p.
class CycInt {
public:
  CycInt() : p_(2), c_(1, 0), den_(1) {}
  static CycInt zero(std::uint32_t p) { return integer(p, 0); }
  static CycInt integer(std::uint32_t p, long long v);
  static CycInt rational(std::uint32_t p, Rat r);
  // zeta_p^e
  static CycInt root_power(std::uint32_t p, std::uint64_t e);
  // from coefficients over zeta^0..zeta^{p-1} (length p), reduced on entry
  static CycInt from_exponent_counts(std::uint32_t p, std::span<const long long> raw,
                                     long long den = 1);

  std::uint32_t order() const { return p_; }
  const std::vector<long long>& coeffs() const { return c_; }
  long long den() const { return den_; }

  bool is_zero() const;
  bool is_rational() const;
  bool is_integer() const { return is_rational() && den_ == 1; }
  Rat as_rational() const;  // raises unless is_rational()
  long long as_integer() const;

  CycInt conj() const { return galois(p_ - 1); }  // zeta -> zeta^{-1}
  CycInt galois(std::uint32_t t) const;           // zeta -> zeta^t, gcd(t, p) = 1
  CycInt norm_sq() const { return *this * conj(); }

  CycInt operator-() const;
  friend CycInt operator+(const CycInt& a, const CycInt& b);
  friend CycInt operator-(const CycInt& a, const CycInt& b);
  friend CycInt operator*(const CycInt& a, const CycInt& b);
  CycInt scaled(Rat r) const;  // multiply by an exact rational

  friend bool operator==(const CycInt& a, const CycInt& b);
  friend bool operator!=(const CycInt& a, const CycInt& b) { return !(a == b); }

  std::complex<double> to_complex() const;
  std::string str() const;

private:
  CycInt(std::uint32_t p, std::vector<long long> c, long long den);
  void normalize();
  static std::pair<CycInt, CycInt> promote(const CycInt& a, const CycInt& b);

  std::uint32_t p_;
  std::vector<long long> c_;  // length p_ - 1
  long long den_;
};

}  // namespace cycfuse
