#pragma once
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cycfuse/numth.hpp"
#include "cycfuse/scheme.hpp"
#include "cycfuse/util.hpp"

namespace cycfuse {

enum class FamilyCase { A, B };

// One member of a two-parameter fusion family. Case A fuses the base scheme
// of index N = p1^m p2 along D_k = union_i C_{i p2 + k p1^{m-1}} into
// d = p1 p2 classes; case B fuses N = p1^m along D_k = union_i C_{i + k p1^{m-1}}
// into d = p1 classes. In both, q = p^{phi(N)/2}.
struct FamilySpec {
  FamilyCase kind = FamilyCase::B;
  std::uint64_t p = 0;
  std::uint64_t p1 = 0;
  std::uint64_t p2 = 0;  // zero in case B
  unsigned m = 1;

  std::uint64_t N() const;
  std::uint64_t f() const;  // phi(N)/2
  std::uint64_t d() const;
  std::uint64_t p1_pow_m1() const;  // p1^{m-1}
  // p^f; raises Overflow past 64 bits
  std::uint64_t q() const;
  // q() <= the field-table size cap
  bool enumerable() const;
  std::string tag() const;  // "A:2,3,5" / "B:2,7"

  // Primality, the mod-4 pattern, and the index-2 shape of <p> mod N at this
  // m. Raises UnsupportedCase naming the violated condition.
  void validate() const;
};

// "A:p,p1,p2" or "B:p,p1", structural parse only (validate() is separate).
FamilySpec parse_family_tag(const std::string& tag, unsigned m);

// Every residue a mod N splits uniquely as a = -s i_a + p1^{m-1} j_a with
// 0 <= i_a < p1^{m-1}, 0 <= j_a < d, where s = p2 in case A and 1 in case B.
struct ResidueDecomposition {
  std::vector<std::uint32_t> i_of;
  std::vector<std::uint32_t> j_of;
};

ResidueDecomposition residue_decomposition(const FamilySpec& fam);

// D_0..D_{d-1} as lists of base class indices.
std::vector<std::vector<std::uint32_t>> family_partition(const FamilySpec& fam);

TranslationScheme build_partition(const FamilySpec& fam,
                                  std::shared_ptr<const FieldTable> field);

// Closed form psi_{gamma^a}(D_k) = T/N for the conjugate of the coefficient
// system selected by conj_sign (the sign put on c). Evaluates the full
// display and the i_a-free reduction of the a-dependent terms and insists
// they agree.
Rat predicted_T(const FamilySpec& fam, const GaussCoeffs& coeffs, std::uint64_t a,
                std::uint64_t k, int conj_sign);

struct FusionReport {
  bool bm_ok = false;
  bool delta_matches = false;       // recovered row blocks = predicted Delta
  bool fused_matches_sums = false;  // fused entries = direct subset sums
  bool multiplicities_equal = false;
  bool scheme_ok = false;
  bool pseudocyclic = false;
  bool t_grid_ok = false;     // exactly one conjugate fits the whole grid
  int matched_conj_sign = 0;  // 0 when t_grid_ok is false
  std::uint64_t k = 0;        // common valency
  std::string detail;         // first failure, empty when all pass
  std::optional<FusedEigenmatrix> fused;
  std::optional<IntersectionTensor> tensor;
};

// End-to-end verification of one family member on an explicit field:
// Bannai-Muzychuk, the predicted row partition, entrywise character sums,
// multiplicities, the intersection tensor axioms, pseudocyclicity, and the
// closed-form value grid.
FusionReport verify_fusion_theorem(const FamilySpec& fam,
                                   std::shared_ptr<const FieldTable> field,
                                   unsigned threads = 1);

struct GroupRingResult {
  bool ok = false;
  std::uint64_t n = 0;       // coefficient of 0
  std::uint64_t lambda = 0;  // common coefficient on F_q^*
  std::string witness;
};

// Coefficient multiset of sum_k D_k^2 in Z[(F_q,+)]: the zero coefficient
// must be q-1 and the rest constant across F_q^*. Coefficients are constant
// on base classes, so one representative per class decides them all.
GroupRingResult group_ring_identity(const TranslationScheme& S, unsigned threads = 1);

// Exact strong-regularity condition on the coefficient system (|b| = c = 1,
// and in case A additionally h even with p1, p2 = 2 p^{h/2} -+ the signed b).
bool srg_condition(const FamilySpec& fam, const GaussCoeffs& coeffs);

struct FamilyRecord {
  FamilyCase kind = FamilyCase::B;
  std::uint64_t p = 0, p1 = 0, p2 = 0;
  std::uint64_t stated_e0 = 0;     // published exponent at m = 1
  std::uint64_t stated_tower = 0;  // published tower: f(m) = e0 * tower^{m-1}
  // stated exponent formula agrees with phi(N)/2 at every m
  bool exponent_consistent = true;

  FamilySpec at(unsigned m) const;
  std::string str() const;
};

// The twelve base families, case A first.
const std::vector<FamilyRecord>& family_registry();

// Number-theoretic reproduction of the registry over p <= p_max,
// p1 <= p1_max, p2 <= p2_max: keeps pairs/triples whose tower instantiates
// at every m >= 1 and whose coefficient system passes srg_condition. No
// field tables are built.
std::vector<FamilyRecord> search_families(std::uint64_t p_max, std::uint64_t p1_max,
                                          std::uint64_t p2_max);

}  // namespace cycfuse
