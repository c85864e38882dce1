#include "cycfuse/ffield.hpp"

#include <unistd.h>

#include <filesystem>

#include "doctest.h"
#include "reference.hpp"

using namespace cycfuse;
using refimpl::thrown_code;

TEST_CASE("canonical modulus per (p, f)") {
  // Smallest primitive polynomial in the sum c_j p^j order, digits c_0..c_f.
  struct Row {
    std::uint64_t p;
    unsigned f;
    std::vector<std::uint32_t> digits;
  };
  const std::vector<Row> rows = {
      {2, 1, {1, 1}},
      {2, 2, {1, 1, 1}},
      {2, 3, {1, 1, 0, 1}},
      {2, 4, {1, 1, 0, 0, 1}},
      {2, 6, {1, 1, 0, 0, 0, 0, 1}},
      {2, 12, {1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1}},
      {2, 16, {1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {3, 1, {1, 1}},
      {3, 2, {2, 1, 1}},
      {3, 4, {2, 1, 0, 0, 1}},
      {3, 5, {1, 2, 0, 0, 0, 1}},
      {5, 1, {2, 1}},
      {5, 2, {2, 1, 1}},
      {7, 1, {2, 1}},
      {17, 4, {11, 1, 0, 0, 1}},
  };
  for (const auto& row : rows) {
    CAPTURE(row.p);
    CAPTURE(row.f);
    FieldSpec spec = find_field_spec(row.p, row.f);
    CHECK(spec.p == row.p);
    CHECK(spec.f == row.f);
    CHECK(spec.modulus == row.digits);
  }
  // x^21 + x^2 + 1
  FieldSpec big = find_field_spec(2, 21);
  std::vector<std::uint32_t> want(22, 0);
  want[0] = want[2] = want[21] = 1;
  CHECK(big.modulus == want);
  CHECK(big.q() == (std::uint64_t(1) << 21));
}

TEST_CASE("Zech tables match polynomial arithmetic") {
  for (auto [p, f] : {std::pair<std::uint64_t, unsigned>{2, 4}, {3, 4}, {3, 5}, {5, 2}, {17, 2}}) {
    CAPTURE(p);
    CAPTURE(f);
    FieldTable F = build_field(p, f);
    refimpl::PolyField PF(F.spec());
    REQUIRE(PF.primitive);
    std::uint64_t ord = F.order();
    for (std::uint64_t n = 0; n < ord; ++n) {
      // trace
      CHECK(F.trace(n) == PF.trace_of(PF.pow[n]));
      // zech: 1 + gamma^n
      auto s = PF.add(PF.pow[0], PF.pow[n]);
      auto it = PF.dlog.find(s);
      if (it == PF.dlog.end())
        CHECK(F.zech(n) == FieldTable::npos);
      else
        CHECK(F.zech(n) == it->second);
      // neg
      auto m = PF.dlog.find(PF.neg(PF.pow[n]));
      REQUIRE(m != PF.dlog.end());
      CHECK(F.neg(n) == m->second);
    }
    // spot-check add/sub on a stride
    for (std::uint64_t n1 = 0; n1 < ord; n1 += 3)
      for (std::uint64_t n2 = 0; n2 < ord; n2 += 5) {
        auto s = PF.add(PF.pow[n1], PF.pow[n2]);
        auto it = PF.dlog.find(s);
        std::uint32_t want = it == PF.dlog.end() ? FieldTable::npos : it->second;
        CHECK(F.add(n1, n2) == want);
        auto d = PF.add(PF.pow[n1], PF.neg(PF.pow[n2]));
        it = PF.dlog.find(d);
        want = it == PF.dlog.end() ? FieldTable::npos : it->second;
        CHECK(F.sub(n1, n2) == want);
      }
  }
}

TEST_CASE("zero sentinel sits where -1 = gamma^n cancels 1") {
  FieldTable F2 = build_field(2, 4);
  CHECK(F2.zech(0) == FieldTable::npos);  // 1 + 1 = 0
  FieldTable F3 = build_field(3, 2);
  CHECK(F3.zech((F3.q() - 1) / 2) == FieldTable::npos);
  for (std::uint64_t n = 0; n < F3.order(); ++n) CHECK(F3.add(n, F3.neg(n)) == FieldTable::npos);
}

TEST_CASE("field construction guards") {
  CHECK(thrown_code([] { build_field(6, 2); }) == errc::composite_characteristic);
  CHECK(thrown_code([] { build_field(1, 3); }) == errc::composite_characteristic);
  CHECK(thrown_code([] { build_field(2, 25); }) == errc::field_too_large);
  CHECK(thrown_code([] { find_field_spec(2, 25); }) == errc::field_too_large);
}

TEST_CASE("cache round-trips bit-identically") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / ("cycfuse_cache_test_" + std::to_string(getpid()));
  fs::create_directories(dir);
  FieldTable fresh = build_field(3, 4);
  REQUIRE(save_field_cache(fresh, dir));
  auto loaded = load_field_cache(3, 4, dir);
  REQUIRE(loaded.has_value());
  CHECK(loaded->spec() == fresh.spec());
  CHECK(loaded->zech_table() == fresh.zech_table());
  CHECK(loaded->trace_table() == fresh.trace_table());

  auto first = build_field_cached(2, 10, dir);
  auto second = build_field_cached(2, 10, dir);  // served from the file
  CHECK(first->zech_table() == second->zech_table());
  CHECK(first->trace_table() == second->trace_table());
  CHECK(load_field_cache(2, 11, dir).has_value() == false);
  fs::remove_all(dir);
}
