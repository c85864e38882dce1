#include "cycfuse/families.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "cycfuse/gauss_index2.hpp"

namespace cycfuse {

namespace {

std::uint64_t pow_checked(std::uint64_t base, std::uint64_t e) {
  long long r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r = checked_mul(r, (long long)base);
  return (std::uint64_t)r;
}

}  // namespace

std::uint64_t FamilySpec::N() const {
  std::uint64_t n = pow_checked(p1, m);
  if (kind == FamilyCase::A) n = (std::uint64_t)checked_mul((long long)n, (long long)p2);
  return n;
}

std::uint64_t FamilySpec::f() const { return euler_phi(N()) / 2; }

std::uint64_t FamilySpec::d() const {
  return kind == FamilyCase::A ? p1 * p2 : p1;
}

std::uint64_t FamilySpec::p1_pow_m1() const { return pow_checked(p1, m - 1); }

std::uint64_t FamilySpec::q() const { return pow_checked(p, f()); }

bool FamilySpec::enumerable() const {
  try {
    return q() <= kFieldSizeCap;
  } catch (const error& e) {
    if (e.code() == errc::overflow) return false;
    throw;
  }
}

std::string FamilySpec::tag() const {
  std::ostringstream os;
  os << (kind == FamilyCase::A ? 'A' : 'B') << ':' << p << ',' << p1;
  if (kind == FamilyCase::A) os << ',' << p2;
  return os.str();
}

void FamilySpec::validate() const {
  if (m < 1) raise(errc::unsupported_case, "tower index m must be at least 1");
  if (!is_prime(p)) raise(errc::composite_characteristic, "p must be prime");
  if (!is_prime(p1) || p1 % 2 == 0 || p1 == p)
    raise(errc::unsupported_case, "p1 must be an odd prime different from p");
  if (kind == FamilyCase::B) {
    if (p2 != 0) raise(errc::unsupported_case, "case B has no second prime");
    if (p1 % 4 != 3 || p1 <= 3) raise(errc::unsupported_case, "case B needs p1 = 3 mod 4, p1 > 3");
  } else {
    if (!is_prime(p2) || p2 % 2 == 0 || p2 == p || p2 == p1)
      raise(errc::unsupported_case, "p2 must be an odd prime distinct from p and p1");
    bool pat = (p1 % 4 == 1 && p2 % 4 == 3) || (p1 % 4 == 3 && p2 % 4 == 1);
    if (!pat) raise(errc::unsupported_case, "case A needs {p1, p2} = {1, 3} mod 4");
  }
  Index2Classification cls = classify_index2(p, N());
  bool ok = false;
  if (kind == FamilyCase::B) {
    ok = cls.kind == Index2Kind::case1 && cls.p1 == p1 && cls.m == m;
  } else if (cls.kind == Index2Kind::case2) {
    if (p1 < p2)
      ok = cls.p1 == p1 && cls.m == m && cls.p2 == p2 && cls.n == 1;
    else
      ok = cls.p1 == p2 && cls.m == 1 && cls.p2 == p1 && cls.n == m;
  }
  if (!ok)
    raise(errc::unsupported_case,
          "<" + std::to_string(p) + "> mod " + std::to_string(N()) +
              " does not have the required index-2 shape for family " + tag());
}

FamilySpec parse_family_tag(const std::string& tag, unsigned m) {
  FamilySpec fam;
  fam.m = m;
  if (tag.size() < 2 || (tag[0] != 'A' && tag[0] != 'B') || tag[1] != ':')
    raise(errc::parse_error, "family tag must look like A:p,p1,p2 or B:p,p1");
  fam.kind = tag[0] == 'A' ? FamilyCase::A : FamilyCase::B;
  std::vector<std::uint64_t> nums;
  std::size_t pos = 2;
  while (pos <= tag.size()) {
    std::size_t next = tag.find(',', pos);
    std::size_t end = next == std::string::npos ? tag.size() : next;
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(tag.data() + pos, tag.data() + end, v);
    if (ec != std::errc() || ptr != tag.data() + end || pos == end)
      raise(errc::parse_error, "bad number in family tag '" + tag + "'");
    nums.push_back(v);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  std::size_t want = fam.kind == FamilyCase::A ? 3 : 2;
  if (nums.size() != want)
    raise(errc::parse_error, fam.kind == FamilyCase::A ? "case A takes three primes"
                                                       : "case B takes two primes");
  fam.p = nums[0];
  fam.p1 = nums[1];
  fam.p2 = fam.kind == FamilyCase::A ? nums[2] : 0;
  return fam;
}

ResidueDecomposition residue_decomposition(const FamilySpec& fam) {
  const std::uint64_t N = fam.N(), P = fam.p1_pow_m1(), d = fam.d();
  const std::uint64_t s = fam.kind == FamilyCase::A ? fam.p2 : 1;
  ResidueDecomposition rd;
  rd.i_of.assign(N, 0);
  rd.j_of.assign(N, 0);
  std::vector<char> seen(N, 0);
  for (std::uint64_t j = 0; j < d; ++j)
    for (std::uint64_t i = 0; i < P; ++i) {
      std::uint64_t a = (P * j + N - (s * i) % N) % N;
      if (seen[a]) raise(errc::bad_partition, "residue decomposition is not a bijection");
      seen[a] = 1;
      rd.i_of[a] = (std::uint32_t)i;
      rd.j_of[a] = (std::uint32_t)j;
    }
  return rd;
}

std::vector<std::vector<std::uint32_t>> family_partition(const FamilySpec& fam) {
  const std::uint64_t N = fam.N(), P = fam.p1_pow_m1(), d = fam.d();
  const std::uint64_t step = fam.kind == FamilyCase::A ? fam.p2 : 1;
  std::vector<std::vector<std::uint32_t>> parts(d);
  std::vector<char> seen(N, 0);
  for (std::uint64_t k = 0; k < d; ++k) {
    parts[k].reserve(P);
    for (std::uint64_t i = 0; i < P; ++i) {
      std::uint64_t c = (i * step + k * P) % N;
      if (seen[c]) raise(errc::bad_partition, "family blocks collide");
      seen[c] = 1;
      parts[k].push_back((std::uint32_t)c);
    }
  }
  return parts;
}

TranslationScheme build_partition(const FamilySpec& fam,
                                  std::shared_ptr<const FieldTable> field) {
  fam.validate();
  if (field->p() != fam.p || field->f() != fam.f())
    raise(errc::field_mismatch,
          "family " + fam.tag() + " at m=" + std::to_string(fam.m) + " lives on GF(" +
              std::to_string(fam.p) + "^" + std::to_string(fam.f()) + ")");
  return TranslationScheme(std::move(field), fam.N(), family_partition(fam));
}

Rat predicted_T(const FamilySpec& fam, const GaussCoeffs& coeffs, std::uint64_t a,
                std::uint64_t k, int conj_sign) {
  const std::uint64_t N = fam.N(), d = fam.d();
  if (a >= N || k >= d) raise(errc::index_out_of_range, "a < N and k < d required");
  if (conj_sign != 1 && conj_sign != -1)
    raise(errc::index_out_of_range, "conjugate sign must be +1 or -1");
  const std::uint64_t expect_D = fam.kind == FamilyCase::A ? fam.p1 * fam.p2 : fam.p1;
  if (coeffs.p != fam.p || coeffs.f != fam.f() || coeffs.D != expect_D)
    raise(errc::field_mismatch, "coefficient system belongs to a different scheme");

  const long long P = (long long)fam.p1_pow_m1();
  const long long p1 = (long long)fam.p1;
  const long long b = coeffs.b;
  const long long c = conj_sign * coeffs.c_abs;
  ResidueDecomposition rd = residue_decomposition(fam);
  const long long jk = (long long)rd.j_of[a] + (long long)k;
  long long ph0 = 1;
  for (std::uint64_t i = 0; i < coeffs.h0; ++i) ph0 = checked_mul(ph0, (long long)fam.p);

  if (fam.kind == FamilyCase::B) {
    const long long d2 = jk % p1 == 0 ? 1 : 0;
    const long long L2 = legendre(jk, fam.p1);
    Rat T = Rat(-P) + Rat(checked_mul(checked_mul(ph0, P), b), 2) * Rat(p1 * d2 - 1) -
            Rat(checked_mul(checked_mul(ph0, P), p1) * c, 2) * Rat(L2);
    return T / Rat((long long)N);
  }

  const long long p2 = (long long)fam.p2;
  const std::uint64_t fdeg = fam.f();
  if (fdeg % 2 != 0) raise(errc::odd_extension_degree, "case A needs an even degree");
  long long sqrtq = 1;
  for (std::uint64_t i = 0; i < fdeg / 2; ++i) sqrtq = checked_mul(sqrtq, (long long)fam.p);

  const std::uint64_t arg1 = (a + (std::uint64_t)P * k) % N;
  const long long d1 = arg1 % fam.p2 == 0 ? 1 : 0;
  const long long L1 = legendre((long long)arg1, fam.p2);
  const long long d2 = jk % p1 == 0 ? 1 : 0;
  const long long L2 = legendre(jk, fam.p1);
  // the same data with i_a eliminated: a + p1^{m-1} k = p1^{m-1} (j_a + k) mod p2
  const long long d1e = jk % p2 == 0 ? 1 : 0;
  const long long lp = fam.m % 2 == 1 ? 1 : legendre(p1, fam.p2);
  const long long L1e = lp * legendre(jk, fam.p2);
  if (d1 != d1e || L1 != L1e)
    raise(errc::no_solution, "closed form disagrees with its reduced form");

  const long long s1 = p1 % 4 == 1 ? 1 : -1;
  const long long s2 = p2 % 4 == 1 ? 1 : -1;
  Rat T = Rat(-P) - Rat(checked_mul(s1 * P * p2, sqrtq) * d1) -
          Rat(checked_mul(s2 * P * p1, sqrtq) * d2) +
          Rat(checked_mul(checked_mul(b, ph0), P), 2) * Rat((p1 * d2 - 1) * (p2 * d1 - 1)) -
          Rat(L1 * L2 * c * checked_mul(checked_mul(ph0, P), p1 * p2), 2);
  return T / Rat((long long)N);
}

namespace {

std::vector<std::vector<std::uint32_t>> canonical_blocks(
    std::vector<std::vector<std::uint32_t>> blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

}  // namespace

FusionReport verify_fusion_theorem(const FamilySpec& fam,
                                   std::shared_ptr<const FieldTable> field,
                                   unsigned threads) {
  TranslationScheme S = build_partition(fam, std::move(field));
  const FieldTable& F = S.field();
  const std::uint64_t N = fam.N(), d = fam.d(), q = F.q();

  FusionReport rep;
  rep.k = S.part_size(0);
  auto note = [&rep](const std::string& msg) {
    if (rep.detail.empty()) rep.detail = msg;
  };

  Eigenmatrix E = eigenmatrix_cyclotomic(F, N);
  BmResult bm = bm_check(E, lambda_of_parts(S.parts()));
  rep.bm_ok = bm.ok();
  if (!rep.bm_ok) {
    rep.detail = "Bannai-Muzychuk: " + bm.refutation->str();
    return rep;
  }
  rep.fused = bm.fused;

  // predicted row blocks: character a joins Delta_{j_a + 1}
  ResidueDecomposition rd = residue_decomposition(fam);
  std::vector<std::vector<std::uint32_t>> expected(d + 1);
  expected[0].push_back(0);
  for (std::uint64_t r = 1; r <= N; ++r)
    expected[rd.j_of[(std::uint64_t)E.row_exponent[r]] + 1].push_back((std::uint32_t)r);
  rep.delta_matches =
      canonical_blocks(expected) == canonical_blocks(bm.fused->row_partition);
  if (!rep.delta_matches) note("row partition differs from the predicted Delta");

  // every fused entry against an independently summed character table
  SubsetCharTable tbl = subset_char_table(F, N, S.parts());
  const CycInt one = CycInt::integer(F.p(), 1);
  rep.fused_matches_sums = true;
  for (std::size_t t = 0; t < bm.fused->row_partition.size() && rep.fused_matches_sums; ++t)
    for (std::uint32_t r : bm.fused->row_partition[t]) {
      if (bm.fused->entries[t][0] != one) {
        rep.fused_matches_sums = false;
        note("fused column 0 is not all ones");
        break;
      }
      for (std::size_t u = 1; u <= d; ++u) {
        CycInt want = r == 0 ? CycInt::integer(F.p(), (long long)S.part_size(u - 1))
                             : tbl.sums[(std::uint64_t)E.row_exponent[r]][u - 1];
        if (bm.fused->entries[t][u] != want) {
          rep.fused_matches_sums = false;
          note("fused entry (" + std::to_string(t) + "," + std::to_string(u) +
               ") differs from the direct sum at row " + std::to_string(r));
          break;
        }
      }
    }

  try {
    std::vector<std::uint64_t> vals = fused_valencies(*bm.fused);
    std::vector<std::uint64_t> mult = multiplicities_from_matrix(bm.fused->entries, vals, q);
    rep.multiplicities_equal = rows_orthogonal(bm.fused->entries, vals) && mult[0] == 1;
    for (std::size_t t = 2; t < mult.size(); ++t)
      if (mult[t] != mult[1]) rep.multiplicities_equal = false;
    if (!rep.multiplicities_equal) note("multiplicities are not uniform");
  } catch (const error& e) {
    rep.multiplicities_equal = false;
    note(std::string("multiplicities: ") + e.what());
  }

  IntersectionTensor tensor = intersection_numbers(S, threads);
  SchemeVerdict verdict = is_association_scheme(tensor);
  rep.scheme_ok = verdict.ok;
  if (!verdict.ok) note("tensor: " + verdict.witness);
  rep.pseudocyclic = is_pseudocyclic(tensor);
  if (!rep.pseudocyclic) note("tensor is not pseudocyclic");
  rep.tensor = std::move(tensor);

  // closed-form grid, both conjugates; exactly one must fit everywhere
  GaussCoeffs coeffs = solve_gauss_coeffs(fam.p, classify_index2(fam.p, N));
  int matches = 0, found = 0;
  std::string grid_fail;
  for (int sign : {1, -1}) {
    bool all = true;
    for (std::uint64_t a = 0; a < N && all; ++a)
      for (std::uint64_t k = 0; k < d && all; ++k) {
        const CycInt& exact = tbl.sums[a][k];
        if (!exact.is_rational() || exact.as_rational() != predicted_T(fam, coeffs, a, k, sign)) {
          all = false;
          if (grid_fail.empty())
            grid_fail = "closed form (sign " + std::string(sign == 1 ? "+" : "-") +
                        ") misses at a=" + std::to_string(a) + " k=" + std::to_string(k);
        }
      }
    if (all) {
      ++matches;
      found = sign;
    }
  }
  rep.t_grid_ok = matches == 1;
  rep.matched_conj_sign = rep.t_grid_ok ? found : 0;
  if (!rep.t_grid_ok)
    note(matches == 0 ? grid_fail : "both conjugates fit the closed-form grid");
  return rep;
}

GroupRingResult group_ring_identity(const TranslationScheme& S, unsigned threads) {
  const FieldTable& F = S.field();
  const std::uint64_t qm1 = F.q() - 1, N = S.base_N();
  GroupRingResult res;

  // sum_k D_k^2 in Z[(F_q,+)]. Coefficient of 0 is #{x : -x in the same part
  // as x}; with every part symmetric that is sum_k |D_k| = q - 1
  std::uint64_t at_zero = 0;
  for (std::uint64_t n = 0; n < qm1; ++n)
    if (S.part_of(F.neg(n) % N) == S.part_of(n % N)) ++at_zero;
  res.n = at_zero;
  if (at_zero != qm1) {
    res.witness = "coefficient of zero is " + std::to_string(at_zero) + ", expected " +
                  std::to_string(qm1);
    return res;
  }

  // coefficient of gamma^t counts pairs x + y = gamma^t with x, y in one
  // part; one representative per base class pins the rest
  std::vector<std::uint64_t> coeff(N, 0);
  parallel_for(N, (int)threads, [&](std::size_t t) {
    std::uint64_t cnt = 0;
    for (std::uint64_t n = 0; n < qm1; ++n) {
      std::uint32_t x = F.sub(t, n);
      if (x == FieldTable::npos) continue;
      if (S.part_of(x % N) == S.part_of(n % N)) ++cnt;
    }
    coeff[t] = cnt;
  });
  res.lambda = coeff[0];
  for (std::uint64_t t = 1; t < N; ++t)
    if (coeff[t] != coeff[0]) {
      res.witness = "coefficient at gamma^" + std::to_string(t) + " is " +
                    std::to_string(coeff[t]) + ", at gamma^0 it is " +
                    std::to_string(coeff[0]);
      return res;
    }
  res.ok = true;
  return res;
}

bool srg_condition(const FamilySpec& fam, const GaussCoeffs& coeffs) {
  const long long b = coeffs.b;
  if ((b != 1 && b != -1) || coeffs.c_abs != 1) return false;
  if (fam.kind == FamilyCase::B) return true;
  if (coeffs.h % 2 != 0) return false;
  long long ph2 = 1;
  for (std::uint64_t i = 0; i < coeffs.h / 2; ++i) ph2 = checked_mul(ph2, (long long)coeffs.p);
  const long long s = fam.p1 % 4 == 1 ? 1 : -1;
  return (long long)fam.p1 == 2 * ph2 + s * b && (long long)fam.p2 == 2 * ph2 - s * b;
}

FamilySpec FamilyRecord::at(unsigned m) const {
  FamilySpec fam;
  fam.kind = kind;
  fam.p = p;
  fam.p1 = p1;
  fam.p2 = p2;
  fam.m = m;
  return fam;
}

std::string FamilyRecord::str() const {
  FamilySpec base = at(1);
  std::ostringstream os;
  os << base.tag() << " d=" << base.d() << " q=" << p << "^(" << base.f() << "*" << p1
     << "^(m-1))";
  if (!exponent_consistent)
    os << " [catalogued " << p << "^(" << stated_e0 << "*" << stated_tower << "^(m-1))]";
  return os.str();
}

const std::vector<FamilyRecord>& family_registry() {
  static const std::vector<FamilyRecord> reg = [] {
    auto rec = [](FamilyCase kc, std::uint64_t p, std::uint64_t p1, std::uint64_t p2,
                  std::uint64_t e0, std::uint64_t tower) {
      FamilyRecord r;
      r.kind = kc;
      r.p = p;
      r.p1 = p1;
      r.p2 = p2;
      r.stated_e0 = e0;
      r.stated_tower = tower;
      r.exponent_consistent = e0 == r.at(1).f() && tower == p1;
      return r;
    };
    std::vector<FamilyRecord> v;
    v.push_back(rec(FamilyCase::A, 2, 3, 5, 4, 3));
    v.push_back(rec(FamilyCase::A, 2, 5, 3, 4, 5));
    v.push_back(rec(FamilyCase::A, 3, 5, 7, 12, 5));
    v.push_back(rec(FamilyCase::A, 3, 7, 5, 12, 5));
    v.push_back(rec(FamilyCase::A, 3, 17, 19, 144, 17));
    v.push_back(rec(FamilyCase::A, 3, 19, 17, 144, 19));
    v.push_back(rec(FamilyCase::B, 2, 7, 0, 3, 7));
    v.push_back(rec(FamilyCase::B, 3, 107, 0, 53, 107));
    v.push_back(rec(FamilyCase::B, 5, 19, 0, 9, 19));
    v.push_back(rec(FamilyCase::B, 5, 499, 0, 249, 499));
    v.push_back(rec(FamilyCase::B, 17, 67, 0, 33, 67));
    v.push_back(rec(FamilyCase::B, 41, 163, 0, 81, 163));
    return v;
  }();
  return reg;
}

namespace {

// instantiable at one m does not mean at all m: the component order at p1
// must keep pace with phi(p1^m), which needs the order mod p1^2 to grow
bool order_persists(std::uint64_t p, std::uint64_t p1) {
  std::uint64_t sq = p1 * p1;
  return mod_pow(p % sq, mult_order(p % p1, p1), sq) != 1;
}

bool admissible(const FamilySpec& fam) {
  try {
    fam.validate();
    if (!order_persists(fam.p, fam.p1)) return false;
    // |b| = c = 1 forces 4 p^h = D + 1, which prunes the coefficient solve
    // down to trivial targets
    const std::uint64_t D = fam.kind == FamilyCase::A ? fam.p1 * fam.p2 : fam.p1;
    long long target = 4;
    for (std::uint64_t i = class_number(D); i > 0; --i)
      target = checked_mul(target, (long long)fam.p);
    if ((std::uint64_t)target != D + 1) return false;
    GaussCoeffs co = solve_gauss_coeffs(fam.p, classify_index2(fam.p, fam.N()));
    return srg_condition(fam, co);
  } catch (const error&) {
    return false;
  }
}

}  // namespace

std::vector<FamilyRecord> search_families(std::uint64_t p_max, std::uint64_t p1_max,
                                          std::uint64_t p2_max) {
  std::vector<FamilyRecord> out;
  auto push = [&out](const FamilySpec& fam) {
    FamilyRecord r;
    r.kind = fam.kind;
    r.p = fam.p;
    r.p1 = fam.p1;
    r.p2 = fam.p2;
    r.stated_e0 = fam.f();
    r.stated_tower = fam.p1;
    r.exponent_consistent = true;
    out.push_back(r);
  };
  for (std::uint64_t p = 2; p <= p_max; ++p) {
    if (!is_prime(p)) continue;
    for (std::uint64_t p1 = 3; p1 <= p1_max; p1 += 2) {
      if (!is_prime(p1) || p1 == p) continue;
      if (p1 % 4 == 3 && p1 > 3) {
        FamilySpec fam{FamilyCase::B, p, p1, 0, 1};
        if (admissible(fam)) push(fam);
      }
      for (std::uint64_t p2 = 3; p2 <= p2_max; p2 += 2) {
        if (!is_prime(p2) || p2 == p || p2 == p1) continue;
        bool pat = (p1 % 4 == 1 && p2 % 4 == 3) || (p1 % 4 == 3 && p2 % 4 == 1);
        // p1 | p2 - 1 would shrink phi(N)/2 against the order at large m
        if (!pat || (p2 - 1) % p1 == 0) continue;
        FamilySpec fam{FamilyCase::A, p, p1, p2, 1};
        if (admissible(fam)) push(fam);
      }
    }
  }
  return out;
}

}  // namespace cycfuse
