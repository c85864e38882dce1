#include "cycfuse/ffield.hpp"

#include <cstdio>
#include <cstring>
#include <numeric>

#include "cycfuse/numth.hpp"

namespace cycfuse {
namespace {

std::uint64_t checked_pow(std::uint64_t p, unsigned f) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < f; ++i) {
    if (q > kFieldSizeCap / p) return std::uint64_t(-1);
    q *= p;
  }
  return q;
}

// Dense coefficient arithmetic mod a monic modulus, digits low->high. Only used
// while hunting for the canonical modulus, so clarity over speed.
struct PolyMod {
  std::uint64_t p;
  unsigned f;
  const std::vector<std::uint32_t>& mod;  // c_0..c_f, c_f = 1

  std::vector<std::uint32_t> mul(const std::vector<std::uint32_t>& a,
                                 const std::vector<std::uint32_t>& b) const {
    std::vector<std::uint64_t> acc(2 * f - 1, 0);
    for (unsigned i = 0; i < f; ++i) {
      if (!a[i]) continue;
      for (unsigned j = 0; j < f; ++j) acc[i + j] = (acc[i + j] + std::uint64_t(a[i]) * b[j]) % p;
    }
    for (unsigned i = 2 * f - 2; i >= f; --i) {
      std::uint64_t c = acc[i];
      if (c) {
        acc[i] = 0;
        for (unsigned j = 0; j < f; ++j) acc[i - f + j] = (acc[i - f + j] + (p - c % p) * mod[j]) % p;
      }
      if (i == f) break;
    }
    return std::vector<std::uint32_t>(acc.begin(), acc.begin() + f);
  }

  std::vector<std::uint32_t> pow_x(std::uint64_t e) const {
    std::vector<std::uint32_t> r(f, 0), base(f, 0);
    r[0] = 1;
    if (f == 1) {
      base[0] = std::uint32_t((p - mod[0] % p) % p);  // x = -c_0
    } else {
      base[1] = 1;
    }
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  bool is_one(const std::vector<std::uint32_t>& a) const {
    if (a[0] != 1) return false;
    for (unsigned j = 1; j < f; ++j)
      if (a[j]) return false;
    return true;
  }
};

bool modulus_is_primitive(std::uint64_t p, unsigned f, const std::vector<std::uint32_t>& mod,
                          const std::vector<std::uint64_t>& qm1_primes, std::uint64_t qm1) {
  if (mod[0] == 0) return false;
  PolyMod pm{p, f, mod};
  if (!pm.is_one(pm.pow_x(qm1))) return false;
  for (std::uint64_t r : qm1_primes)
    if (pm.is_one(pm.pow_x(qm1 / r))) return false;
  return true;
}

}  // namespace

std::uint64_t FieldSpec::q() const {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < f; ++i) r *= p;
  return r;
}

FieldSpec find_field_spec(std::uint64_t p, unsigned f) {
  if (p < 2 || !is_prime(p)) raise(errc::composite_characteristic, "p = " + std::to_string(p));
  if (f == 0) raise(errc::index_out_of_range, "f = 0");
  std::uint64_t q = checked_pow(p, f);
  if (q == std::uint64_t(-1) || q > kFieldSizeCap)
    raise(errc::field_too_large, "p^f exceeds " + std::to_string(kFieldSizeCap));
  std::uint64_t qm1 = q - 1;
  std::vector<std::uint64_t> rs;
  for (auto& [r, e] : factorize(qm1)) rs.push_back(r);

  // Candidates ordered by sum c_j p^j, constant term as least significant digit.
  for (std::uint64_t v = 1; v < q; ++v) {
    std::vector<std::uint32_t> mod(f + 1, 1);
    std::uint64_t t = v;
    for (unsigned j = 0; j < f; ++j) {
      mod[j] = std::uint32_t(t % p);
      t /= p;
    }
    if (mod[0] == 0) continue;
    if (modulus_is_primitive(p, f, mod, rs, qm1)) return FieldSpec{p, f, std::move(mod)};
  }
  raise(errc::no_solution, "no primitive polynomial found");  // unreachable for prime p
}

FieldTable::FieldTable(FieldSpec spec, std::vector<std::uint32_t> zech,
                       std::vector<std::uint32_t> trace)
    : spec_(std::move(spec)), q_(spec_.q()), zech_(std::move(zech)), trace_(std::move(trace)) {
  half_ = spec_.p == 2 ? 0 : std::uint32_t((q_ - 1) / 2);
}

std::uint32_t FieldTable::zech(std::uint64_t n) const {
  if (n >= q_ - 1) raise(errc::index_out_of_range, "dlog " + std::to_string(n));
  return zech_[n];
}

std::uint32_t FieldTable::trace(std::uint64_t n) const {
  if (n >= q_ - 1) raise(errc::index_out_of_range, "dlog " + std::to_string(n));
  return trace_[n];
}

std::uint32_t FieldTable::add(std::uint64_t n1, std::uint64_t n2) const {
  if (n1 == npos) return n2 == npos ? npos : std::uint32_t(n2);
  if (n2 == npos) return std::uint32_t(n1);
  if (n1 >= q_ - 1 || n2 >= q_ - 1) raise(errc::index_out_of_range, "dlog out of range");
  std::uint64_t d = n2 >= n1 ? n2 - n1 : n2 + (q_ - 1) - n1;
  std::uint32_t z = zech_[d];
  if (z == npos) return npos;
  return std::uint32_t((n1 + z) % (q_ - 1));
}

std::uint32_t FieldTable::neg(std::uint64_t n) const {
  if (n == npos) return npos;
  if (n >= q_ - 1) raise(errc::index_out_of_range, "dlog " + std::to_string(n));
  return std::uint32_t((n + half_) % (q_ - 1));
}

std::uint32_t FieldTable::sub(std::uint64_t n1, std::uint64_t n2) const {
  return add(n1, neg(n2));
}

FieldTable build_field(std::uint64_t p, unsigned f) {
  FieldSpec spec = find_field_spec(p, f);
  const std::uint64_t q = spec.q();
  const std::uint64_t qm1 = q - 1;

  // gamma^n as packed base-p digit strings, plus the inverse map.
  std::vector<std::uint32_t> pw(qm1);
  std::vector<std::uint32_t> dlog(q, FieldTable::npos);
  if (p == 2) {
    std::uint32_t modbits = 0;
    for (unsigned j = 0; j <= f; ++j) modbits |= spec.modulus[j] << j;
    std::uint32_t cur = 1;
    for (std::uint64_t n = 0; n < qm1; ++n) {
      pw[n] = cur;
      dlog[cur] = std::uint32_t(n);
      cur <<= 1;
      if (cur >> f & 1) cur ^= modbits;
    }
  } else if (f == 1) {
    std::uint64_t g = (p - spec.modulus[0] % p) % p;
    std::uint64_t cur = 1;
    for (std::uint64_t n = 0; n < qm1; ++n) {
      pw[n] = std::uint32_t(cur);
      dlog[cur] = std::uint32_t(n);
      cur = cur * g % p;
    }
  } else {
    std::vector<std::uint32_t> cur(f, 0), ppow(f, 1);
    for (unsigned j = 1; j < f; ++j) ppow[j] = std::uint32_t(ppow[j - 1] * p);
    cur[0] = 1;
    for (std::uint64_t n = 0; n < qm1; ++n) {
      std::uint32_t packed = 0;
      for (unsigned j = 0; j < f; ++j) packed += cur[j] * ppow[j];
      pw[n] = packed;
      dlog[packed] = std::uint32_t(n);
      std::uint32_t top = cur[f - 1];
      for (unsigned j = f - 1; j > 0; --j) cur[j] = cur[j - 1];
      cur[0] = 0;
      if (top) {
        for (unsigned j = 0; j < f; ++j)
          cur[j] = std::uint32_t((cur[j] + std::uint64_t(top) * (p - spec.modulus[j] % p)) % p);
      }
    }
  }
  for (std::uint64_t v = 1; v < q; ++v)
    if (dlog[v] == FieldTable::npos) raise(errc::no_solution, "power table does not cover GF(q)*");

  std::vector<std::uint32_t> zech(qm1);
  if (p == 2) {
    for (std::uint64_t n = 0; n < qm1; ++n) {
      std::uint32_t s = pw[n] ^ 1u;
      zech[n] = s ? dlog[s] : FieldTable::npos;
    }
  } else {
    for (std::uint64_t n = 0; n < qm1; ++n) {
      std::uint32_t v = pw[n];
      std::uint32_t d0 = std::uint32_t(v % p);
      std::uint32_t s = v - d0 + std::uint32_t((d0 + 1) % p);
      zech[n] = s ? dlog[s] : FieldTable::npos;
    }
  }
  {  // exactly one sentinel, at dlog(-1)
    std::uint64_t at = p == 2 ? 0 : qm1 / 2;
    if (zech[at] != FieldTable::npos) raise(errc::no_solution, "zech sentinel misplaced");
  }

  // Tr(x^j) for the power basis, by summing Frobenius conjugates of gamma^j.
  std::vector<std::uint32_t> basis_tr(f);
  for (unsigned j = 0; j < f; ++j) {
    std::vector<std::uint64_t> acc(f, 0);
    std::uint64_t e = j % qm1;
    for (unsigned i = 0; i < f; ++i) {
      std::uint64_t v = pw[e];
      for (unsigned t = 0; t < f; ++t) {
        acc[t] += v % p;
        v /= p;
      }
      e = e * p % qm1;
    }
    for (unsigned t = 1; t < f; ++t)
      if (acc[t] % p) raise(errc::no_solution, "trace of basis element not scalar");
    basis_tr[j] = std::uint32_t(acc[0] % p);
  }

  std::vector<std::uint32_t> trace(qm1);
  if (p == 2) {
    std::uint32_t mask = 0;
    for (unsigned j = 0; j < f; ++j) mask |= basis_tr[j] << j;
    for (std::uint64_t n = 0; n < qm1; ++n) trace[n] = __builtin_popcount(pw[n] & mask) & 1;
  } else {
    for (std::uint64_t n = 0; n < qm1; ++n) {
      std::uint64_t v = pw[n], t = 0;
      for (unsigned j = 0; j < f; ++j) {
        t += (v % p) * basis_tr[j];
        v /= p;
      }
      trace[n] = std::uint32_t(t % p);
    }
  }
  return FieldTable(std::move(spec), std::move(zech), std::move(trace));
}

std::shared_ptr<const FieldTable> build_field_shared(std::uint64_t p, unsigned f) {
  return std::make_shared<const FieldTable>(build_field(p, f));
}

namespace {
constexpr std::uint32_t kCacheMagic = 0x43464c44;  // "CFLD"
constexpr std::uint32_t kCacheVersion = 1;

std::filesystem::path cache_path(std::uint64_t p, unsigned f, const std::filesystem::path& dir) {
  return dir / ("field_p" + std::to_string(p) + "_f" + std::to_string(f) + ".tbl");
}
}  // namespace

bool save_field_cache(const FieldTable& t, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::FILE* fp = std::fopen(cache_path(t.p(), t.f(), dir).c_str(), "wb");
  if (!fp) return false;
  auto w = [&](const void* ptr, std::size_t bytes) { return std::fwrite(ptr, 1, bytes, fp) == bytes; };
  std::uint64_t p = t.p(), q = t.q();
  std::uint32_t f = t.f();
  bool ok = w(&kCacheMagic, 4) && w(&kCacheVersion, 4) && w(&p, 8) && w(&f, 4) &&
            w(t.spec().modulus.data(), 4 * (t.f() + 1)) && w(&q, 8) &&
            w(t.zech_table().data(), 4 * (q - 1)) && w(t.trace_table().data(), 4 * (q - 1));
  std::fclose(fp);
  return ok;
}

std::optional<FieldTable> load_field_cache(std::uint64_t p, unsigned f,
                                           const std::filesystem::path& dir) {
  std::FILE* fp = std::fopen(cache_path(p, f, dir).c_str(), "rb");
  if (!fp) return std::nullopt;
  auto r = [&](void* ptr, std::size_t bytes) { return std::fread(ptr, 1, bytes, fp) == bytes; };
  std::uint32_t magic = 0, version = 0, ff = 0;
  std::uint64_t pp = 0, q = 0;
  std::vector<std::uint32_t> mod, zech, trace;
  bool ok = r(&magic, 4) && r(&version, 4) && r(&pp, 8) && r(&ff, 4) && magic == kCacheMagic &&
            version == kCacheVersion && pp == p && ff == f;
  if (ok) {
    mod.resize(f + 1);
    ok = r(mod.data(), 4 * (f + 1)) && r(&q, 8);
  }
  if (ok) {
    FieldSpec canonical = find_field_spec(p, f);
    ok = canonical.modulus == mod && canonical.q() == q;
    if (ok) {
      zech.resize(q - 1);
      trace.resize(q - 1);
      ok = r(zech.data(), 4 * (q - 1)) && r(trace.data(), 4 * (q - 1));
    }
    if (ok) {
      std::fclose(fp);
      return FieldTable(std::move(canonical), std::move(zech), std::move(trace));
    }
  }
  std::fclose(fp);
  return std::nullopt;
}

std::shared_ptr<const FieldTable> build_field_cached(std::uint64_t p, unsigned f,
                                                     const std::filesystem::path& dir) {
  if (!dir.empty()) {
    if (auto t = load_field_cache(p, f, dir))
      return std::make_shared<const FieldTable>(std::move(*t));
  }
  auto t = build_field_shared(p, f);
  if (!dir.empty()) save_field_cache(*t, dir);
  return t;
}

}  // namespace cycfuse
