#pragma once
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <vector>

#include "cycfuse/error.hpp"

namespace cycfuse {

// Largest field the table builder will materialize.
inline constexpr std::uint64_t kFieldSizeCap = std::uint64_t(1) << 24;

// Monic polynomial x^f + c_{f-1} x^{f-1} + ... + c_0 over GF(p); modulus holds
// c_0 .. c_f with c_f = 1. Canonical modulus for (p, f) is the primitive one
// minimizing sum c_j p^j, so the constant term is the least significant digit.
struct FieldSpec {
  std::uint64_t p = 0;
  unsigned f = 0;
  std::vector<std::uint32_t> modulus;

  std::uint64_t q() const;
  bool operator==(const FieldSpec&) const = default;
};

FieldSpec find_field_spec(std::uint64_t p, unsigned f);

// GF(q) with every nonzero element stored as its discrete log n, meaning
// gamma^n for the canonical primitive root gamma. Zero is FieldTable::npos.
// zech(n) is Z(n) with 1 + gamma^n = gamma^{Z(n)}; the one n with
// 1 + gamma^n = 0 holds the npos sentinel (n = 0 iff p = 2, else (q-1)/2).
class FieldTable {
public:
  static constexpr std::uint32_t npos = 0xffffffffu;

  FieldTable(FieldSpec spec, std::vector<std::uint32_t> zech, std::vector<std::uint32_t> trace);

  const FieldSpec& spec() const { return spec_; }
  std::uint64_t p() const { return spec_.p; }
  unsigned f() const { return spec_.f; }
  std::uint64_t q() const { return q_; }
  std::uint64_t order() const { return q_ - 1; }  // |GF(q)*|

  std::uint32_t zech(std::uint64_t n) const;
  std::uint32_t trace(std::uint64_t n) const;

  // dlog of gamma^n1 + gamma^n2 (npos when the sum is zero).
  std::uint32_t add(std::uint64_t n1, std::uint64_t n2) const;
  // dlog of gamma^n1 - gamma^n2.
  std::uint32_t sub(std::uint64_t n1, std::uint64_t n2) const;
  // dlog of -gamma^n.
  std::uint32_t neg(std::uint64_t n) const;

  const std::vector<std::uint32_t>& zech_table() const { return zech_; }
  const std::vector<std::uint32_t>& trace_table() const { return trace_; }

private:
  FieldSpec spec_;
  std::uint64_t q_;
  std::uint32_t half_;  // dlog of -1
  std::vector<std::uint32_t> zech_;
  std::vector<std::uint32_t> trace_;
};

FieldTable build_field(std::uint64_t p, unsigned f);
std::shared_ptr<const FieldTable> build_field_shared(std::uint64_t p, unsigned f);

// Table cache. Files are a pure optimization: a loaded table is bit-identical
// to a fresh build_field(p, f).
bool save_field_cache(const FieldTable& t, const std::filesystem::path& dir);
std::optional<FieldTable> load_field_cache(std::uint64_t p, unsigned f,
                                           const std::filesystem::path& dir);
std::shared_ptr<const FieldTable> build_field_cached(std::uint64_t p, unsigned f,
                                                     const std::filesystem::path& dir);

}  // namespace cycfuse
