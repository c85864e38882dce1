#pragma once
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "cycfuse/cycint.hpp"
#include "cycfuse/ffield.hpp"

namespace cycfuse {

// Cyclotomic classes C_i = gamma^i <gamma^N> of index N; class of gamma^n is
// n mod N. The induced translation scheme is symmetric iff -1 lands in C_0.
struct CycClasses {
  std::uint64_t N = 0;
  std::uint64_t class_size = 0;
  bool minus_one_in_c0 = false;
};

CycClasses cyclotomic_classes(const FieldTable& F, std::uint64_t N);

// counts(i, r) = #{n = i mod N : Tr(gamma^n) = r}. One O(q) pass; every
// character sum over unions of classes reduces to these histograms because
// psi_{gamma^a}(C_i) depends only on (i + a) mod N.
class ClassTraceHistogram {
public:
  ClassTraceHistogram(const FieldTable& F, std::uint64_t N);
  std::uint64_t N() const { return N_; }
  std::uint32_t p() const { return p_; }
  std::uint64_t counts(std::uint64_t i, std::uint32_t r) const { return h_[i * p_ + r]; }
  // psi_{gamma^a}(C_i) as an exact cyclotomic integer
  CycInt class_sum(std::uint64_t i, std::uint64_t a) const;

private:
  std::uint64_t N_;
  std::uint32_t p_;
  std::vector<std::uint64_t> h_;
};

// sum over the listed elements x (as dlogs) of xi_p^{Tr(gamma^a x)}; direct
// elementwise evaluation, no class structure assumed.
CycInt subset_char_sum(const FieldTable& F, std::span<const std::uint32_t> elems,
                       std::uint64_t a);

// Gauss period eta_i = psi(C_i)
CycInt gauss_period(const FieldTable& F, std::uint64_t N, std::uint64_t i);

// g(chi) for chi(gamma) = e^{2 pi i k / N} in floating point, with an
// a-posteriori error bound. k = 0 mod N is the trivial character: exactly -1.
struct NumericGauss {
  std::complex<double> value;
  double bound = 0;
};
NumericGauss gauss_sum_numeric(const FieldTable& F, std::uint64_t N, std::uint64_t k);

// First eigenmatrix of the N-class cyclotomic scheme, laid out with the
// valency row on top, column 0 for the diagonal relation, and body rows the
// circulant of Gauss periods: row i covers the character psi_{gamma^{N-i}},
// recorded in row_exponent (-1 for the trivial character).
struct Eigenmatrix {
  std::uint64_t N = 0;
  std::uint64_t q = 0;
  std::vector<std::vector<CycInt>> P;    // (N+1) x (N+1)
  std::vector<long long> row_exponent;   // size N+1
};

Eigenmatrix eigenmatrix_cyclotomic(const FieldTable& F, std::uint64_t N);

// Table of exact values psi_{gamma^a}(D_k) for subsets D_k given as unions of
// base-N cyclotomic classes. a only matters mod N on such subsets, so rows
// run over a = 0..N-1. Built from one histogram pass, O(q + N*d*p).
struct SubsetCharTable {
  std::uint64_t N = 0;
  std::vector<std::vector<CycInt>> sums;  // [a][k]
};

SubsetCharTable subset_char_table(const FieldTable& F, std::uint64_t base_N,
                                  const std::vector<std::vector<std::uint32_t>>& parts);

// Exact multiplicities m_i = q / (sum_j |P[i][j]|^2 / k_j) from row
// orthogonality; raises if any fails to be a positive integer or the total
// misses q. Works for any square character-sum matrix with valency weights.
std::vector<std::uint64_t> multiplicities_from_matrix(
    const std::vector<std::vector<CycInt>>& P, std::span<const std::uint64_t> valencies,
    std::uint64_t q);

std::vector<std::uint64_t> eigenmatrix_multiplicities(const Eigenmatrix& P,
                                                      std::span<const std::uint64_t> valencies);

// Exact check that distinct rows satisfy sum_j P[i][j] conj(P[i'][j]) / k_j = 0.
bool rows_orthogonal(const std::vector<std::vector<CycInt>>& P,
                     std::span<const std::uint64_t> valencies);

}  // namespace cycfuse
