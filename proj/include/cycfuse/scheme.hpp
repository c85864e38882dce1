#pragma once
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cycfuse/charsum.hpp"
#include "cycfuse/ffield.hpp"

namespace cycfuse {

// Partition of F_q^* into d parts, each a symmetric union of base-N
// cyclotomic classes; part k carries the relation {(x,y) : x-y in D_k},
// relation index k+1 (index 0 is the diagonal). Parts are kept as sorted
// lists of base class indices.
class TranslationScheme {
public:
  TranslationScheme(std::shared_ptr<const FieldTable> field, std::uint64_t base_N,
                    std::vector<std::vector<std::uint32_t>> parts);

  const FieldTable& field() const { return *field_; }
  const std::shared_ptr<const FieldTable>& field_ptr() const { return field_; }
  std::uint64_t base_N() const { return base_N_; }
  std::size_t d() const { return parts_.size(); }
  const std::vector<std::vector<std::uint32_t>>& parts() const { return parts_; }
  std::uint32_t part_of(std::uint64_t base_class) const;
  std::uint64_t class_size() const { return (field_->q() - 1) / base_N_; }
  std::uint64_t part_size(std::size_t k) const { return parts_[k].size() * class_size(); }
  // dlogs of the elements of part k, ascending
  std::vector<std::uint32_t> part_elements(std::size_t k) const;

private:
  std::shared_ptr<const FieldTable> field_;
  std::uint64_t base_N_ = 1;
  std::vector<std::vector<std::uint32_t>> parts_;
  std::vector<std::uint32_t> part_of_;
};

// The N-class base scheme itself (every part a single class). Requires
// -1 in C_0.
TranslationScheme cyclotomic_scheme(std::shared_ptr<const FieldTable> field, std::uint64_t N);

// Relation-index partitions: block 0 must be {0} (the diagonal relation) and
// the rest partitions 1..d. lambda_of_parts lifts a 0-based class partition
// into this form.
std::vector<std::vector<std::uint32_t>> lambda_of_parts(
    const std::vector<std::vector<std::uint32_t>>& parts);

// Merge the scheme's parts along lambda. Purely structural; validity of the
// result as a scheme is bm_check's or intersection_numbers' job.
TranslationScheme fuse(const TranslationScheme& s,
                       const std::vector<std::vector<std::uint32_t>>& lambda);

struct FusedEigenmatrix {
  std::vector<std::vector<CycInt>> entries;               // (d'+1) x (d'+1)
  std::vector<std::vector<std::uint32_t>> row_partition;  // Delta, blocks of row ids
  std::vector<std::vector<std::uint32_t>> col_partition;  // Lambda as given
};

struct BmRefutation {
  std::size_t signature_count = 0;
  std::size_t expected = 0;
  // rows with different block row-sum signatures, differing on `block`
  std::uint32_t row_a = 0, row_b = 0;
  std::size_t block = 0;
  CycInt sum_a, sum_b;
  std::string str() const;
};

struct BmResult {
  std::optional<FusedEigenmatrix> fused;
  std::optional<BmRefutation> refutation;
  bool ok() const { return fused.has_value(); }
};

// Bannai-Muzychuk criterion: group rows of E by the vector of block row sums
// over lambda; the fusion is a scheme iff the number of distinct signatures
// equals the number of blocks. Row blocks come out in first-occurrence order,
// so the valency row's block is first.
BmResult bm_check(const Eigenmatrix& E, const std::vector<std::vector<std::uint32_t>>& lambda);

// Valencies (1, k_1..k_d') read off the top row of a fused eigenmatrix.
std::vector<std::uint64_t> fused_valencies(const FusedEigenmatrix& M);

struct IntersectionTensor {
  std::size_t d = 0;
  std::vector<std::uint64_t> valencies;  // size d+1, valencies[0] = 1
  std::vector<std::uint64_t> nums;       // (d+1)^3, (i,j,k) flattened
  // every representative of every class produced the same counts
  bool constant_over_representatives = true;
  std::string witness;  // first inconstancy, empty when certified

  std::uint64_t at(std::size_t i, std::size_t j, std::size_t k) const {
    return nums[(i * (d + 1) + j) * (d + 1) + k];
  }
};

// p[i][j][k] = #{w : z - w in D_{i-1}, w in D_{j-1}} for z in D_{k-1},
// streamed once per base class representative gamma^t. Parts are closed
// under multiplication by C_0, which pins the count within each base class,
// so constancy across the base classes of each part certifies the counts for
// every representative.
IntersectionTensor intersection_numbers(const TranslationScheme& S, unsigned threads = 1);

struct SchemeVerdict {
  bool ok = false;
  std::string witness;  // empty when ok
};

// Axioms on the tensor: representative-independence, p[i][j][k] = p[j][i][k],
// row sums sum_j p[i][j][k] = k_i, and the diagonal column p[i][j][0] =
// k_i [i=j].
SchemeVerdict is_association_scheme(const IntersectionTensor& t);

// Equal valencies k and sum_{i>=1} p[i][i][j] = k-1 for every j >= 1.
bool is_pseudocyclic(const IntersectionTensor& t);

struct PseudocyclicReport {
  bool ok = false;
  std::uint64_t k = 0;
  std::string witness;
};

// Same verdict as is_pseudocyclic but streamed: sum_{i>=1} p[i][i][j] =
// #{w != 0, z : z - w and w in the same part} for z in D_{j-1}, checked at
// every base class representative. O(N q) time, O(N) space, so it covers
// schemes whose full tensor would not fit.
PseudocyclicReport pseudocyclic_by_counting(const TranslationScheme& S, unsigned threads = 1);

struct TwoDesignReport {
  bool ok = false;
  std::uint64_t v = 0, k = 0, lambda = 0;
  std::string witness;
};

// Blocks are x + D_i over all x and i; checks every unordered pair of
// elements lies in exactly k-1 blocks. By translation the count for {a, b}
// only depends on a-b, so one O(q) pass per difference suffices.
TwoDesignReport two_design_check(const TranslationScheme& S);

struct SrgReport {
  bool strongly_regular = false;
  enum class Degenerate { none, empty, complete, cliques } degenerate = Degenerate::none;
  std::uint64_t v = 0, k = 0;
  long long r = 0, s = 0;  // restricted eigenvalues, r > s
  long long lam = 0, mu = 0;
  bool all_rational_integers = false;
  std::vector<CycInt> distinct_values;  // first-occurrence order over a = 0..N-1
};

// Restricted eigenvalue analysis of Cay(F_q, D) for D a union of base-N
// classes (given by index). Strongly regular iff exactly two distinct
// restricted values, both rational integers; complete/empty/zero-mu cases are
// flagged degenerate rather than refuted.
SrgReport srg_check(const FieldTable& F, std::uint64_t base_N,
                    const std::vector<std::uint32_t>& classes);

// Baumert-Mills-Ward: the N-class cyclotomic scheme is amorphic iff -1 is a
// power of p mod N.
bool amorphy_check(std::uint64_t p, std::uint64_t N);

// Text format: header lines (version, p/f, modulus digits c_0..c_f, base_N,
// d) then one "part" line per part. Round-trips exactly.
std::string serialize_scheme(const TranslationScheme& S);
TranslationScheme parse_scheme(std::istream& in);
TranslationScheme parse_scheme_text(const std::string& text);

}  // namespace cycfuse
