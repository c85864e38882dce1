#pragma once
#include <complex>
#include <cstdint>
#include <string>

#include "cycfuse/charsum.hpp"
#include "cycfuse/ffield.hpp"
#include "cycfuse/numth.hpp"

namespace cycfuse {

// Symbolic value (b + s*c_abs*sqrt(-D))/2 * p^{h0} with s in {+1, -1}. Both
// conjugates are carried throughout: the congruence in solve_gauss_coeffs pins
// the sign of b, but the sum itself is only determined up to conjugation, so
// nothing here ever selects s.
struct SymbolicGauss {
  GaussCoeffs coeffs;

  // (b^2 + D*c^2)/4 * p^{2*h0}, which equals p^f = q. Raises Overflow when q
  // does not fit in 64 bits; the symbolic form stays valid regardless.
  std::uint64_t magnitude_sq() const;

  std::complex<double> value(int sign) const;

  // Renders with the +- left explicit, e.g. "(-1 +- 1*sqrt(-7))/2 * 2^1".
  std::string str() const;
};

// Symbolic Gauss sum of an order-N multiplicative character of GF(p^f),
// f = ord_N(p), for the two index-2 shapes with an evaluation theorem.
// Semi-primitive, case-3 and non-index-2 inputs are refused.
SymbolicGauss eval_index2(std::uint64_t p, std::uint64_t N);

struct CrossCheckReport {
  int matched_sign = 0;  // +1 or -1
  double err_plus = 0.0;
  double err_minus = 0.0;
  double tolerance = 0.0;
  std::complex<double> numeric_value;
};

// Evaluates the Gauss sum of the order-N character with chi(gamma) =
// e^{2 pi i/N} numerically on F and locates it among the conjugates of sg.
// Exactly one sign must land within 1e-6 * sqrt(q).
CrossCheckReport cross_check(const SymbolicGauss& sg, const FieldTable& F, std::uint64_t N);

}  // namespace cycfuse
