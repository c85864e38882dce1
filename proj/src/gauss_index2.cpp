#include "cycfuse/gauss_index2.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "cycfuse/util.hpp"

namespace cycfuse {

std::uint64_t SymbolicGauss::magnitude_sq() const {
  const auto& g = coeffs;
  // b^2 + D c^2 = 4 p^h holds by construction; |b| can exceed 2^31, so square
  // in 64-bit unsigned with the usual checks.
  std::uint64_t babs = static_cast<std::uint64_t>(g.b < 0 ? -g.b : g.b);
  std::uint64_t cabs = static_cast<std::uint64_t>(g.c_abs);
  std::uint64_t four_ph =
      checked_add(checked_mul(babs, babs), checked_mul(g.D, checked_mul(cabs, cabs)));
  std::uint64_t out = four_ph / 4;
  for (std::uint64_t i = 0; i < 2 * g.h0; ++i) out = checked_mul(out, g.p);
  return out;
}

std::complex<double> SymbolicGauss::value(int sign) const {
  const auto& g = coeffs;
  double scale = 0.5 * std::pow(static_cast<double>(g.p), static_cast<double>(g.h0));
  double re = static_cast<double>(g.b) * scale;
  double im = (sign >= 0 ? 1.0 : -1.0) * static_cast<double>(g.c_abs) *
              std::sqrt(static_cast<double>(g.D)) * scale;
  return {re, im};
}

std::string SymbolicGauss::str() const {
  std::ostringstream os;
  os << "(" << coeffs.b << " +- " << coeffs.c_abs << "*sqrt(-" << coeffs.D << "))/2 * "
     << coeffs.p << "^" << coeffs.h0;
  return os.str();
}

SymbolicGauss eval_index2(std::uint64_t p, std::uint64_t N) {
  Index2Classification cls = classify_index2(p, N);
  if (cls.kind != Index2Kind::case1 && cls.kind != Index2Kind::case2) {
    const char* shape = cls.kind == Index2Kind::semi_primitive ? "semi-primitive"
                        : cls.kind == Index2Kind::case3        ? "case 3"
                                                               : "not index 2";
    raise(errc::unsupported_case, "no evaluation for p=" + std::to_string(p) +
                                      ", N=" + std::to_string(N) + " (" + shape + ")");
  }
  return SymbolicGauss{solve_gauss_coeffs(p, cls)};
}

CrossCheckReport cross_check(const SymbolicGauss& sg, const FieldTable& F, std::uint64_t N) {
  if (N <= 1) raise(errc::bad_divisor, "cross_check needs a character of order >= 2");
  if (F.p() != sg.coeffs.p || F.f() != sg.coeffs.f)
    raise(errc::field_mismatch, "GF(" + std::to_string(F.p()) + "^" + std::to_string(F.f()) +
                                    ") is not the field of the symbolic value");
  NumericGauss num = gauss_sum_numeric(F, N, 1);

  CrossCheckReport rep;
  rep.numeric_value = num.value;
  rep.tolerance = 1e-6 * std::sqrt(static_cast<double>(F.q()));
  rep.err_plus = std::abs(num.value - sg.value(+1));
  rep.err_minus = std::abs(num.value - sg.value(-1));
  bool plus = rep.err_plus <= rep.tolerance;
  bool minus = rep.err_minus <= rep.tolerance;
  if (plus && minus)
    raise(errc::both_conjugates_match, "both conjugates of " + sg.str() + " within tolerance");
  if (!plus && !minus)
    raise(errc::no_conjugate_matches,
          "numeric sum matches neither conjugate of " + sg.str() +
              " (err+ = " + std::to_string(rep.err_plus) +
              ", err- = " + std::to_string(rep.err_minus) + ")");
  rep.matched_sign = plus ? +1 : -1;
  return rep;
}

}  // namespace cycfuse
