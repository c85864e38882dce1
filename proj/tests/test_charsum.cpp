#include "cycfuse/charsum.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "reference.hpp"

using namespace cycfuse;
using refimpl::thrown_code;

namespace {
std::vector<std::uint32_t> class_elems(const FieldTable& F, std::uint64_t N, std::uint64_t i) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t n = i; n < F.order(); n += N) out.push_back(std::uint32_t(n));
  return out;
}
}  // namespace

TEST_CASE("class bookkeeping and symmetry flags") {
  auto F16 = build_field_shared(2, 4);
  auto c = cyclotomic_classes(*F16, 5);
  CHECK(c.class_size == 3);
  CHECK(c.minus_one_in_c0);  // p = 2: -1 = 1

  auto F81 = build_field_shared(3, 4);
  CHECK(cyclotomic_classes(*F81, 5).minus_one_in_c0);        // 80/5 = 16 even
  CHECK_FALSE(cyclotomic_classes(*F81, 16).minus_one_in_c0);  // 80/16 = 5 odd
  CHECK(thrown_code([&] { cyclotomic_classes(*F16, 7); }) == errc::bad_divisor);
}

TEST_CASE("histogram periods on GF(16) and GF(81)") {
  auto F16 = build_field_shared(2, 4);
  std::uint64_t zeros = 0;
  for (std::uint64_t n = 0; n < F16->order(); ++n) zeros += F16->trace(n) == 0;
  CHECK(zeros == 7);

  ClassTraceHistogram h5(*F16, 5);
  const long long periods5[5] = {3, -1, -1, -1, -1};
  for (std::uint64_t i = 0; i < 5; ++i) {
    CHECK(h5.class_sum(i, 0) == CycInt::integer(2, periods5[i]));
    CHECK(gauss_period(*F16, 5, i) == h5.class_sum(i, 0));
  }
  ClassTraceHistogram h3(*F16, 3);
  const long long periods3[3] = {-3, 1, 1};
  for (std::uint64_t i = 0; i < 3; ++i) CHECK(h3.class_sum(i, 0) == CycInt::integer(2, periods3[i]));

  auto F81 = build_field_shared(3, 4);
  ClassTraceHistogram h81(*F81, 5);
  const long long periods81[5] = {7, -2, -2, -2, -2};
  for (std::uint64_t i = 0; i < 5; ++i)
    CHECK(h81.class_sum(i, 0) == CycInt::integer(3, periods81[i]));

  // raw counts cover each class once
  for (std::uint64_t i = 0; i < 5; ++i) {
    std::uint64_t total = 0;
    for (std::uint32_t r = 0; r < h81.p(); ++r) total += h81.counts(i, r);
    CHECK(total == 16);
  }
}

TEST_CASE("class sums shift through the character index") {
  for (auto [p, f, N] : {std::tuple<std::uint64_t, unsigned, std::uint64_t>{2, 4, 5},
                         {2, 4, 15},
                         {3, 4, 5},
                         {3, 4, 16}}) {
    auto F = build_field_shared(p, f);
    refimpl::PolyField PF(F->spec());
    ClassTraceHistogram h(*F, N);
    for (std::uint64_t i = 0; i < N; ++i)
      for (std::uint64_t a = 0; a < N; ++a) {
        CHECK(h.class_sum(i, a) == h.class_sum((i + a) % N, 0));
        auto elems = class_elems(*F, N, i);
        CHECK(h.class_sum(i, a) == refimpl::char_sum(PF, elems, a));
        CHECK(subset_char_sum(*F, elems, a) == h.class_sum(i, a));
      }
  }
}

TEST_CASE("eigenmatrix of the 5-class scheme on GF(16)") {
  auto F = build_field_shared(2, 4);
  Eigenmatrix E = eigenmatrix_cyclotomic(*F, 5);
  REQUIRE(E.P.size() == 6);
  const long long want[6][6] = {
      {1, 3, 3, 3, 3, 3},  {1, -1, 3, -1, -1, -1}, {1, -1, -1, 3, -1, -1},
      {1, -1, -1, -1, 3, -1}, {1, -1, -1, -1, -1, 3}, {1, 3, -1, -1, -1, -1},
  };
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(E.P[i][j] == CycInt::integer(2, want[i][j]));
  const long long exps[6] = {-1, 4, 3, 2, 1, 0};
  for (int i = 0; i < 6; ++i) CHECK(E.row_exponent[i] == exps[i]);

  std::vector<std::uint64_t> val(6, 3);
  val[0] = 1;
  CHECK(rows_orthogonal(E.P, val));
  auto mult = eigenmatrix_multiplicities(E, val);
  CHECK(mult == std::vector<std::uint64_t>{1, 3, 3, 3, 3, 3});

  auto F81 = build_field_shared(3, 4);
  CHECK(thrown_code([&] { eigenmatrix_cyclotomic(*F81, 16); }) == errc::minus_one_not_in_c0);
}

TEST_CASE("numeric Gauss sums") {
  auto F8 = build_field_shared(2, 3);
  NumericGauss t = gauss_sum_numeric(*F8, 7, 0);
  CHECK(t.value == std::complex<double>(-1.0, 0.0));

  NumericGauss g = gauss_sum_numeric(*F8, 7, 1);
  CHECK(std::abs(g.value - std::complex<double>(-1.0, 2.6457513110645907)) < 1e-9);
  CHECK(std::abs(std::norm(g.value) - 8.0) < 1e-9);

  auto F16 = build_field_shared(2, 4);
  CHECK(std::abs(gauss_sum_numeric(*F16, 15, 1).value - std::complex<double>(1.0, 3.872983346207417)) < 1e-9);
  for (std::uint64_t k = 1; k < 5; ++k)
    CHECK(std::abs(std::norm(gauss_sum_numeric(*F16, 5, k).value) - 16.0) < 1e-9);
}

TEST_CASE("subset table equals direct sums") {
  auto F = build_field_shared(2, 4);
  std::vector<std::vector<std::uint32_t>> parts = {{0, 1}, {2, 3, 4}};
  SubsetCharTable tbl = subset_char_table(*F, 5, parts);
  REQUIRE(tbl.sums.size() == 5);
  refimpl::PolyField PF(F->spec());
  for (std::uint64_t a = 0; a < 5; ++a)
    for (std::size_t k = 0; k < parts.size(); ++k) {
      std::vector<std::uint32_t> elems;
      for (std::uint32_t c : parts[k])
        for (std::uint32_t n : class_elems(*F, 5, c)) elems.push_back(n);
      CHECK(tbl.sums[a][k] == refimpl::char_sum(PF, elems, a));
    }
}
