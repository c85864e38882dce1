#include "cycfuse/charsum.hpp"

#include <cmath>
#include <limits>

namespace cycfuse {

CycClasses cyclotomic_classes(const FieldTable& F, std::uint64_t N) {
  std::uint64_t qm1 = F.q() - 1;
  if (N < 2 || qm1 % N != 0)
    raise(errc::bad_divisor, "N = " + std::to_string(N) + " must divide q-1 = " + std::to_string(qm1));
  CycClasses out;
  out.N = N;
  out.class_size = qm1 / N;
  out.minus_one_in_c0 = F.p() == 2 || out.class_size % 2 == 0;
  return out;
}

ClassTraceHistogram::ClassTraceHistogram(const FieldTable& F, std::uint64_t N)
    : N_(N), p_(std::uint32_t(F.p())) {
  cyclotomic_classes(F, N);  // validates N
  h_.assign(N_ * p_, 0);
  const auto& tr = F.trace_table();
  std::uint64_t qm1 = F.q() - 1;
  for (std::uint64_t n = 0; n < qm1; ++n) ++h_[(n % N_) * p_ + tr[n]];
}

CycInt ClassTraceHistogram::class_sum(std::uint64_t i, std::uint64_t a) const {
  std::uint64_t cls = (i + a) % N_;
  std::vector<long long> raw(p_, 0);
  for (std::uint32_t r = 0; r < p_; ++r) raw[r] = (long long)h_[cls * p_ + r];
  return CycInt::from_exponent_counts(p_, raw);
}

CycInt subset_char_sum(const FieldTable& F, std::span<const std::uint32_t> elems,
                       std::uint64_t a) {
  std::uint32_t p = std::uint32_t(F.p());
  std::uint64_t qm1 = F.q() - 1;
  std::vector<long long> raw(p, 0);
  for (std::uint32_t n : elems) {
    if (n >= qm1) raise(errc::index_out_of_range, "dlog " + std::to_string(n));
    ++raw[F.trace_table()[(n + a) % qm1]];
  }
  return CycInt::from_exponent_counts(p, raw);
}

CycInt gauss_period(const FieldTable& F, std::uint64_t N, std::uint64_t i) {
  ClassTraceHistogram h(F, N);
  return h.class_sum(i % N, 0);
}

NumericGauss gauss_sum_numeric(const FieldTable& F, std::uint64_t N, std::uint64_t k) {
  cyclotomic_classes(F, N);
  if (k % N == 0) return {std::complex<double>(-1.0, 0.0), 0.0};
  ClassTraceHistogram h(F, N);
  std::uint32_t p = std::uint32_t(F.p());
  std::complex<double> g = 0;
  for (std::uint64_t i = 0; i < N; ++i) {
    double ang = 2.0 * M_PI * double(k % N) * double(i) / double(N);
    std::complex<double> chi(std::cos(ang), std::sin(ang));
    std::complex<double> inner = 0;
    for (std::uint32_t r = 0; r < p; ++r) {
      if (!h.counts(i, r)) continue;
      double a2 = 2.0 * M_PI * double(r) / double(p);
      inner += double(h.counts(i, r)) * std::complex<double>(std::cos(a2), std::sin(a2));
    }
    g += chi * inner;
  }
  // q-1 unit terms accumulated through two rounds of rounding
  double bound = 16.0 * double(F.q()) * std::numeric_limits<double>::epsilon();
  return {g, bound};
}

Eigenmatrix eigenmatrix_cyclotomic(const FieldTable& F, std::uint64_t N) {
  CycClasses cc = cyclotomic_classes(F, N);
  if (!cc.minus_one_in_c0)
    raise(errc::minus_one_not_in_c0,
          "scheme is not symmetric: (q-1)/N odd for odd p");
  ClassTraceHistogram h(F, N);
  std::uint32_t p = std::uint32_t(F.p());
  Eigenmatrix E;
  E.N = N;
  E.q = F.q();
  E.P.reserve(N + 1);
  E.row_exponent.assign(N + 1, -1);
  {
    std::vector<CycInt> row;
    row.reserve(N + 1);
    row.push_back(CycInt::integer(p, 1));
    for (std::uint64_t j = 0; j < N; ++j) row.push_back(CycInt::integer(p, (long long)cc.class_size));
    E.P.push_back(std::move(row));
  }
  for (std::uint64_t i = 1; i <= N; ++i) {
    std::uint64_t a = (N - i) % N;
    E.row_exponent[i] = (long long)a;
    std::vector<CycInt> row;
    row.reserve(N + 1);
    row.push_back(CycInt::integer(p, 1));
    for (std::uint64_t j = 0; j < N; ++j) row.push_back(h.class_sum(j, a));
    E.P.push_back(std::move(row));
  }
  return E;
}

SubsetCharTable subset_char_table(const FieldTable& F, std::uint64_t base_N,
                                  const std::vector<std::vector<std::uint32_t>>& parts) {
  ClassTraceHistogram h(F, base_N);
  SubsetCharTable t;
  t.N = base_N;
  t.sums.resize(base_N);
  std::uint32_t p = std::uint32_t(F.p());
  for (std::uint64_t a = 0; a < base_N; ++a) {
    t.sums[a].reserve(parts.size());
    for (const auto& part : parts) {
      CycInt s = CycInt::integer(p, 0);
      for (std::uint32_t c : part) {
        if (c >= base_N) raise(errc::index_out_of_range, "class index " + std::to_string(c));
        s = s + h.class_sum(c, a);
      }
      t.sums[a].push_back(std::move(s));
    }
  }
  return t;
}

std::vector<std::uint64_t> multiplicities_from_matrix(
    const std::vector<std::vector<CycInt>>& P, std::span<const std::uint64_t> valencies,
    std::uint64_t q) {
  std::size_t n = P.size();
  if (valencies.size() != n) raise(errc::index_out_of_range, "valency count");
  std::vector<std::uint64_t> m(n);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    CycInt s = CycInt::integer(2, 0);
    for (std::size_t j = 0; j < n; ++j)
      s = s + P[i][j].norm_sq().scaled(Rat(1, (long long)valencies[j]));
    Rat r = s.as_rational();  // sum is rational even when single terms are not
    if (r.num <= 0) raise(errc::no_solution, "non-positive norm row");
    Rat mi = Rat((long long)q) / r;
    if (mi.den != 1 || mi.num <= 0)
      raise(errc::no_solution, "multiplicity " + mi.str() + " is not a positive integer");
    m[i] = (std::uint64_t)mi.num;
    total += m[i];
  }
  if (total != q) raise(errc::no_solution, "multiplicities do not sum to q");
  return m;
}

std::vector<std::uint64_t> eigenmatrix_multiplicities(const Eigenmatrix& E,
                                                      std::span<const std::uint64_t> valencies) {
  return multiplicities_from_matrix(E.P, valencies, E.q);
}

bool rows_orthogonal(const std::vector<std::vector<CycInt>>& P,
                     std::span<const std::uint64_t> valencies) {
  std::size_t n = P.size();
  if (valencies.size() != n) raise(errc::index_out_of_range, "valency count");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k) {
      CycInt s = CycInt::integer(2, 0);
      for (std::size_t j = 0; j < n; ++j)
        s = s + (P[i][j] * P[k][j].conj()).scaled(Rat(1, (long long)valencies[j]));
      if (!s.is_zero()) return false;
    }
  return true;
}

}  // namespace cycfuse
