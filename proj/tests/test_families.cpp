#include "cycfuse/families.hpp"

#include <algorithm>
#include <set>

#include "doctest.h"
#include "reference.hpp"

using namespace cycfuse;
using refimpl::thrown_code;

TEST_CASE("tag parsing") {
  FamilySpec a = parse_family_tag("A:2,3,5", 2);
  CHECK(a.kind == FamilyCase::A);
  CHECK(a.p == 2);
  CHECK(a.p1 == 3);
  CHECK(a.p2 == 5);
  CHECK(a.m == 2);
  CHECK(a.tag() == "A:2,3,5");

  FamilySpec b = parse_family_tag("B:17,67", 1);
  CHECK(b.kind == FamilyCase::B);
  CHECK(b.p1 == 67);
  CHECK(b.p2 == 0);
  CHECK(b.tag() == "B:17,67");

  for (const char* bad : {"C:2,3", "A:2,3", "B:2,3,5", "A:2,3,5,7", "A:x,3,5", "B:2,", ""})
    CHECK(thrown_code([&] { parse_family_tag(bad, 1); }) == errc::parse_error);
}

TEST_CASE("derived sizes") {
  FamilySpec a = parse_family_tag("A:2,3,5", 2);
  CHECK(a.N() == 45);
  CHECK(a.f() == 12);
  CHECK(a.d() == 15);
  CHECK(a.p1_pow_m1() == 3);
  CHECK(a.q() == 4096);
  CHECK(a.enumerable());

  FamilySpec b = parse_family_tag("B:2,7", 2);
  CHECK(b.N() == 49);
  CHECK(b.f() == 21);
  CHECK(b.d() == 7);
  CHECK(b.p1_pow_m1() == 7);
  CHECK(b.q() == (std::uint64_t(1) << 21));

  FamilySpec big = parse_family_tag("A:3,17,19", 1);
  CHECK(big.N() == 323);
  CHECK(big.f() == 144);
  CHECK_FALSE(big.enumerable());  // 3^144 overflows long before the cap
}

TEST_CASE("validation against the classification") {
  for (const auto& rec : family_registry()) {
    CAPTURE(rec.str());
    CHECK_FALSE(thrown_code([&] { rec.at(1).validate(); }).has_value());
  }
  CHECK_FALSE(thrown_code([] { parse_family_tag("A:2,3,5", 2).validate(); }).has_value());
  CHECK_FALSE(thrown_code([] { parse_family_tag("B:3,11", 1).validate(); }).has_value());

  // 3^5 = 1 mod 121: the tower collapses at m = 2
  CHECK(thrown_code([] { parse_family_tag("B:3,11", 2).validate(); }) == errc::unsupported_case);
  // p1 = 1 mod 4 cannot carry case B
  CHECK(thrown_code([] { parse_family_tag("B:2,5", 1).validate(); }) == errc::unsupported_case);
  CHECK(thrown_code([] { parse_family_tag("A:2,3,3", 1).validate(); }) == errc::unsupported_case);
  CHECK(thrown_code([] { parse_family_tag("A:2,9,5", 1).validate(); }) == errc::unsupported_case);
  CHECK(thrown_code([] { parse_family_tag("A:4,3,5", 1).validate(); }) ==
        errc::composite_characteristic);
  // (2,5,3) is a family but (5,2,3) has even members
  CHECK(thrown_code([] { parse_family_tag("A:5,2,3", 1).validate(); }) == errc::unsupported_case);
}

TEST_CASE("residue decomposition is the stated bijection") {
  for (const char* tag : {"A:2,3,5", "A:3,5,7", "B:2,7", "B:3,11"})
    for (unsigned m : {1u, 2u}) {
      FamilySpec fam = parse_family_tag(tag, m);
      if (thrown_code([&] { fam.validate(); }).has_value()) continue;  // (3,11) stops at m = 1
      CAPTURE(tag);
      CAPTURE(m);
      ResidueDecomposition rd = residue_decomposition(fam);
      std::uint64_t N = fam.N(), P = fam.p1_pow_m1(), d = fam.d();
      std::uint64_t s = fam.kind == FamilyCase::A ? fam.p2 : 1;
      REQUIRE(rd.i_of.size() == N);
      for (std::uint64_t a = 0; a < N; ++a) {
        CHECK(rd.i_of[a] < P);
        CHECK(rd.j_of[a] < d);
        std::uint64_t recon = (P * rd.j_of[a] + N - s * rd.i_of[a] % N) % N;
        CHECK(recon == a);
      }
      // each j value is hit exactly P times
      std::vector<std::uint64_t> hits(d, 0);
      for (std::uint64_t a = 0; a < N; ++a) hits[rd.j_of[a]]++;
      for (std::uint64_t j = 0; j < d; ++j) CHECK(hits[j] == P);
    }
}

TEST_CASE("partition layout") {
  FamilySpec fam = parse_family_tag("A:2,3,5", 2);
  auto parts = family_partition(fam);
  REQUIRE(parts.size() == 15);
  CHECK(parts[0] == std::vector<std::uint32_t>{0, 5, 10});
  CHECK(parts[1] == std::vector<std::uint32_t>{3, 8, 13});
  std::set<std::uint32_t> all;
  for (const auto& p : parts) {
    CHECK(p.size() == 3);
    all.insert(p.begin(), p.end());
  }
  CHECK(all.size() == 45);

  // case B at any m: D_k = {k P .. k P + P - 1}
  FamilySpec b = parse_family_tag("B:2,7", 2);
  auto bparts = family_partition(b);
  REQUIRE(bparts.size() == 7);
  for (std::uint32_t k = 0; k < 7; ++k)
    for (std::uint32_t i = 0; i < 7; ++i) CHECK(bparts[k][i] == 7 * k + i);

  // m = 1 degenerates to the identity fusion
  auto id = family_partition(parse_family_tag("A:2,3,5", 1));
  REQUIRE(id.size() == 15);
  for (std::uint32_t k = 0; k < 15; ++k) CHECK(id[k] == std::vector<std::uint32_t>{k});
}

TEST_CASE("closed-form row sums are -1 for either conjugate") {
  // members whose value grid fits in int64; the larger towers raise Overflow
  struct Row {
    const char* tag;
    unsigned m;
  };
  const std::vector<Row> rows = {
      {"A:2,3,5", 1}, {"A:2,3,5", 2}, {"A:2,5,3", 1}, {"A:2,5,3", 2}, {"A:3,5,7", 1},
      {"A:3,7,5", 1}, {"B:2,7", 1},   {"B:2,7", 2},   {"B:3,11", 1},  {"B:3,107", 1},
      {"A:17,3,5", 1},
  };
  for (const auto& row : rows) {
    FamilySpec fam = parse_family_tag(row.tag, row.m);
    GaussCoeffs coeffs = solve_gauss_coeffs(fam.p, classify_index2(fam.p, fam.N()));
    CAPTURE(row.tag);
    CAPTURE(row.m);
    for (int sign : {+1, -1})
      for (std::uint64_t a : {std::uint64_t(0), std::uint64_t(1), fam.N() - 1}) {
        Rat sum(0);
        for (std::uint64_t k = 0; k < fam.d(); ++k)
          sum = sum + predicted_T(fam, coeffs, a, k, sign);
        CHECK(sum == Rat(-1));
      }
  }

  FamilySpec big = parse_family_tag("A:3,17,19", 1);
  GaussCoeffs bigc = solve_gauss_coeffs(3, classify_index2(3, 323));
  CHECK(thrown_code([&] { predicted_T(big, bigc, 0, 0, 1); }) == errc::overflow);
}

TEST_CASE("closed form bounds and mismatches are rejected") {
  FamilySpec fam = parse_family_tag("A:2,3,5", 1);
  GaussCoeffs coeffs = solve_gauss_coeffs(2, classify_index2(2, 15));
  CHECK(thrown_code([&] { predicted_T(fam, coeffs, 15, 0, 1); }) == errc::index_out_of_range);
  CHECK(thrown_code([&] { predicted_T(fam, coeffs, 0, 15, 1); }) == errc::index_out_of_range);
  CHECK(thrown_code([&] { predicted_T(fam, coeffs, 0, 0, 2); }) == errc::index_out_of_range);
  GaussCoeffs wrong = solve_gauss_coeffs(2, classify_index2(2, 7));
  CHECK(thrown_code([&] { predicted_T(fam, wrong, 0, 0, 1); }) == errc::field_mismatch);
}

TEST_CASE("fusion theorem end to end on enumerable members") {
  struct Row {
    const char* tag;
    unsigned m;
    std::uint64_t want_k;
  };
  const std::vector<Row> rows = {
      {"A:2,3,5", 1, 1},  {"A:2,5,3", 1, 1},      {"B:2,7", 1, 1},
      {"B:3,11", 1, 22},  {"A:17,3,5", 1, 5568},
  };  // k = (q-1)/d throughout
  for (const auto& row : rows) {
    CAPTURE(row.tag);
    FamilySpec fam = parse_family_tag(row.tag, row.m);
    fam.validate();
    REQUIRE(fam.enumerable());
    auto F = build_field_shared(fam.p, unsigned(fam.f()));
    FusionReport rep = verify_fusion_theorem(fam, F);
    CHECK(rep.bm_ok);
    CHECK(rep.delta_matches);
    CHECK(rep.fused_matches_sums);
    CHECK(rep.multiplicities_equal);
    CHECK(rep.scheme_ok);
    CHECK(rep.pseudocyclic);
    CHECK(rep.t_grid_ok);
    CHECK((rep.matched_conj_sign == 1 || rep.matched_conj_sign == -1));
    CHECK(rep.k == row.want_k);
    CHECK(rep.detail.empty());
  }
}

TEST_CASE("the (17,3,5) member's value set") {
  FamilySpec fam = parse_family_tag("A:17,3,5", 1);
  GaussCoeffs coeffs = solve_gauss_coeffs(17, classify_index2(17, 15));
  CHECK(coeffs.b == -14);
  CHECK(coeffs.c_abs == 8);
  auto F = build_field_shared(17, 4);
  FusionReport rep = verify_fusion_theorem(fam, F);
  REQUIRE(rep.t_grid_ok);
  std::set<long long> values;
  for (std::uint64_t a = 0; a < 15; ++a)
    for (std::uint64_t k = 0; k < 15; ++k) {
      Rat v = predicted_T(fam, coeffs, a, k, rep.matched_conj_sign);
      REQUIRE(v.is_integer());
      values.insert(v.num);
    }
  CHECK(values == std::set<long long>{-76, -42, -25, 60, 128});
  CHECK_FALSE(srg_condition(fam, coeffs));
}

TEST_CASE("group ring identity") {
  auto F16 = build_field_shared(2, 4);
  TranslationScheme whole(F16, 1, {{0}});
  GroupRingResult gr = group_ring_identity(whole);
  CHECK(gr.ok);
  CHECK(gr.n == 15);
  CHECK(gr.lambda == 14);

  TranslationScheme S = cyclotomic_scheme(F16, 5);
  gr = group_ring_identity(S);
  CHECK(gr.ok);
  CHECK(gr.n == 15);
  CHECK(gr.lambda == 2);
  refimpl::LiteralGroupRing lit = refimpl::group_ring_literal(S);
  CHECK(lit.zero_coeff == 15);
  for (const auto& [g, c] : lit.nonzero) CHECK(c == 2);

  // uneven fusion: zero coefficient still q-1, but lambda is not constant
  TranslationScheme fused = fuse(S, lambda_of_parts({{0, 1}, {2, 3, 4}}));
  gr = group_ring_identity(fused);
  CHECK_FALSE(gr.ok);
  CHECK_FALSE(gr.witness.empty());
  lit = refimpl::group_ring_literal(fused);
  CHECK(lit.zero_coeff == 15);
  std::set<std::uint64_t> seen;
  for (const auto& [g, c] : lit.nonzero) seen.insert(c);
  CHECK(seen.size() > 1);
}

TEST_CASE("strong regularity condition on coefficient systems") {
  for (const auto& rec : family_registry()) {
    FamilySpec fam = rec.at(1);
    GaussCoeffs coeffs = solve_gauss_coeffs(fam.p, classify_index2(fam.p, fam.N()));
    CAPTURE(rec.str());
    CHECK(srg_condition(fam, coeffs));
  }
  // (3,11) carries |b| = c = 1 too; only the tower condition keeps it out
  FamilySpec f11 = parse_family_tag("B:3,11", 1);
  CHECK(srg_condition(f11, solve_gauss_coeffs(3, classify_index2(3, 11))));
}

TEST_CASE("registry shape") {
  const auto& reg = family_registry();
  REQUIRE(reg.size() == 12);
  std::vector<std::string> tags;
  for (const auto& rec : reg) tags.push_back(rec.at(1).tag());
  const std::vector<std::string> want = {
      "A:2,3,5",  "A:2,5,3",  "A:3,5,7", "A:3,7,5",  "A:3,17,19", "A:3,19,17",
      "B:2,7",    "B:3,107",  "B:5,19",  "B:5,499",  "B:17,67",   "B:41,163",
  };
  CHECK(tags == want);
  int inconsistent = 0;
  for (const auto& rec : reg) {
    if (!rec.exponent_consistent) {
      ++inconsistent;
      CHECK(rec.at(1).tag() == "A:3,7,5");  // its printed exponent says 12*5^{m-1}
    }
    CHECK(rec.at(1).f() % rec.stated_e0 == 0);
  }
  CHECK(inconsistent == 1);

  // stated exponents for spot rows
  CHECK(reg[0].stated_e0 == 4);
  CHECK(reg[0].stated_tower == 3);
  CHECK(reg[4].stated_e0 == 144);
  CHECK(reg[4].stated_tower == 17);
  CHECK(reg[11].stated_e0 == 81);
  CHECK(reg[11].stated_tower == 163);
}

TEST_CASE("search recovers the registry") {
  auto tags_of = [](const std::vector<FamilyRecord>& rs) {
    std::vector<std::string> t;
    for (const auto& r : rs) t.push_back(r.at(1).tag());
    std::sort(t.begin(), t.end());
    return t;
  };

  auto full = search_families(50, 600, 25);
  std::vector<std::string> want;
  for (const auto& rec : family_registry()) want.push_back(rec.at(1).tag());
  std::sort(want.begin(), want.end());
  CHECK(tags_of(full) == want);

  // tighter p1 bound drops only (5,499)
  auto mid = search_families(50, 200, 20);
  auto mid_tags = tags_of(mid);
  CHECK(mid_tags.size() == 11);
  CHECK(std::find(mid_tags.begin(), mid_tags.end(), "B:5,499") == mid_tags.end());
  CHECK(std::find(mid_tags.begin(), mid_tags.end(), "B:3,107") != mid_tags.end());

  // small bounds still reach all six case-A triples
  auto small = search_families(5, 20, 20);
  auto small_tags = tags_of(small);
  for (const char* t : {"A:2,3,5", "A:2,5,3", "A:3,5,7", "A:3,7,5", "A:3,17,19", "A:3,19,17"})
    CHECK(std::find(small_tags.begin(), small_tags.end(), t) != small_tags.end());
  for (const auto& r : small) CHECK((r.kind == FamilyCase::A || r.p1 <= 20));
}
