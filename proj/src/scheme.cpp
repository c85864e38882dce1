#include "cycfuse/scheme.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <sstream>

#include "cycfuse/numth.hpp"
#include "cycfuse/util.hpp"

namespace cycfuse {

TranslationScheme::TranslationScheme(std::shared_ptr<const FieldTable> field,
                                     std::uint64_t base_N,
                                     std::vector<std::vector<std::uint32_t>> parts)
    : field_(std::move(field)), base_N_(base_N), parts_(std::move(parts)) {
  std::uint64_t qm1 = field_->q() - 1;
  if (base_N_ == 0 || qm1 % base_N_ != 0)
    raise(errc::bad_divisor,
          "base_N = " + std::to_string(base_N_) + " must divide q-1 = " + std::to_string(qm1));
  if (parts_.empty()) raise(errc::bad_partition, "no parts");
  part_of_.assign(base_N_, UINT32_MAX);
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    auto& part = parts_[k];
    if (part.empty()) raise(errc::bad_partition, "part " + std::to_string(k) + " is empty");
    std::sort(part.begin(), part.end());
    for (std::uint32_t c : part) {
      if (c >= base_N_)
        raise(errc::bad_partition, "class index " + std::to_string(c) + " out of range");
      if (part_of_[c] != UINT32_MAX)
        raise(errc::bad_partition, "class " + std::to_string(c) + " appears twice");
      part_of_[c] = std::uint32_t(k);
    }
  }
  for (std::uint64_t c = 0; c < base_N_; ++c)
    if (part_of_[c] == UINT32_MAX)
      raise(errc::bad_partition, "class " + std::to_string(c) + " is uncovered");
  // D = -D: negation shifts the class index by dlog(-1) mod N
  std::uint64_t s = field_->p() == 2 ? 0 : (qm1 / 2) % base_N_;
  for (std::uint64_t c = 0; c < base_N_; ++c)
    if (part_of_[(c + s) % base_N_] != part_of_[c])
      raise(errc::bad_partition,
            "part containing class " + std::to_string(c) + " is not symmetric");
}

std::uint32_t TranslationScheme::part_of(std::uint64_t base_class) const {
  if (base_class >= base_N_)
    raise(errc::index_out_of_range, "class " + std::to_string(base_class));
  return part_of_[base_class];
}

std::vector<std::uint32_t> TranslationScheme::part_elements(std::size_t k) const {
  std::uint64_t qm1 = field_->q() - 1;
  std::vector<std::uint32_t> out;
  out.reserve(part_size(k));
  for (std::uint64_t n = 0; n < qm1; ++n)
    if (part_of_[n % base_N_] == k) out.push_back(std::uint32_t(n));
  return out;
}

TranslationScheme cyclotomic_scheme(std::shared_ptr<const FieldTable> field, std::uint64_t N) {
  CycClasses cc = cyclotomic_classes(*field, N);
  if (!cc.minus_one_in_c0)
    raise(errc::minus_one_not_in_c0, "base scheme is not symmetric: (q-1)/N odd for odd p");
  std::vector<std::vector<std::uint32_t>> parts(N);
  for (std::uint64_t i = 0; i < N; ++i) parts[i] = {std::uint32_t(i)};
  return TranslationScheme(std::move(field), N, std::move(parts));
}

std::vector<std::vector<std::uint32_t>> lambda_of_parts(
    const std::vector<std::vector<std::uint32_t>>& parts) {
  std::vector<std::vector<std::uint32_t>> lambda;
  lambda.reserve(parts.size() + 1);
  lambda.push_back({0});
  for (const auto& part : parts) {
    std::vector<std::uint32_t> blk;
    blk.reserve(part.size());
    for (std::uint32_t c : part) blk.push_back(c + 1);
    lambda.push_back(std::move(blk));
  }
  return lambda;
}

namespace {

void validate_lambda(const std::vector<std::vector<std::uint32_t>>& lambda, std::size_t d) {
  if (lambda.empty() || lambda[0].size() != 1 || lambda[0][0] != 0)
    raise(errc::bad_partition, "block 0 must be exactly {0}");
  std::vector<char> seen(d + 1, 0);
  seen[0] = 1;
  for (std::size_t t = 1; t < lambda.size(); ++t) {
    if (lambda[t].empty()) raise(errc::bad_partition, "block " + std::to_string(t) + " is empty");
    for (std::uint32_t r : lambda[t]) {
      if (r == 0 || r > d)
        raise(errc::bad_partition, "relation index " + std::to_string(r) + " out of range");
      if (seen[r])
        raise(errc::bad_partition, "relation " + std::to_string(r) + " appears twice");
      seen[r] = 1;
    }
  }
  for (std::size_t r = 1; r <= d; ++r)
    if (!seen[r]) raise(errc::bad_partition, "relation " + std::to_string(r) + " is uncovered");
}

}  // namespace

TranslationScheme fuse(const TranslationScheme& s,
                       const std::vector<std::vector<std::uint32_t>>& lambda) {
  validate_lambda(lambda, s.d());
  std::vector<std::vector<std::uint32_t>> parts;
  parts.reserve(lambda.size() - 1);
  for (std::size_t t = 1; t < lambda.size(); ++t) {
    std::vector<std::uint32_t> part;
    for (std::uint32_t r : lambda[t])
      part.insert(part.end(), s.parts()[r - 1].begin(), s.parts()[r - 1].end());
    parts.push_back(std::move(part));
  }
  return TranslationScheme(s.field_ptr(), s.base_N(), std::move(parts));
}

std::string BmRefutation::str() const {
  std::ostringstream os;
  os << "expected " << expected << " row signatures, found " << signature_count << "; rows "
     << row_a << " and " << row_b << " disagree on column block " << block << ": "
     << sum_a.str() << " vs " << sum_b.str();
  return os.str();
}

BmResult bm_check(const Eigenmatrix& E, const std::vector<std::vector<std::uint32_t>>& lambda) {
  std::size_t n = E.P.size();
  validate_lambda(lambda, n - 1);
  std::size_t blocks = lambda.size();

  std::vector<std::vector<CycInt>> sig(n);
  for (std::size_t r = 0; r < n; ++r) {
    sig[r].reserve(blocks);
    for (const auto& blk : lambda) {
      CycInt s = CycInt::integer(2, 0);
      for (std::uint32_t j : blk) s = s + E.P[r][j];
      sig[r].push_back(std::move(s));
    }
  }

  // group rows by signature; str() is canonical so it doubles as a map key
  std::vector<std::uint32_t> rep;
  std::vector<std::vector<std::uint32_t>> delta;
  std::map<std::string, std::size_t> index;
  for (std::size_t r = 0; r < n; ++r) {
    std::string key;
    for (const auto& v : sig[r]) {
      key += v.str();
      key += '|';
    }
    auto [it, fresh] = index.emplace(std::move(key), delta.size());
    if (fresh) {
      delta.emplace_back();
      rep.push_back(std::uint32_t(r));
    }
    delta[it->second].push_back(std::uint32_t(r));
  }

  BmResult out;
  if (delta.size() != blocks) {
    BmRefutation ref;
    ref.signature_count = delta.size();
    ref.expected = blocks;
    if (delta.size() >= 2) {
      ref.row_a = rep[delta.size() - 2];
      ref.row_b = rep[delta.size() - 1];
      for (std::size_t b = 0; b < blocks; ++b)
        if (sig[ref.row_a][b] != sig[ref.row_b][b]) {
          ref.block = b;
          ref.sum_a = sig[ref.row_a][b];
          ref.sum_b = sig[ref.row_b][b];
          break;
        }
    }
    out.refutation = std::move(ref);
    return out;
  }

  FusedEigenmatrix M;
  M.col_partition = lambda;
  M.row_partition = std::move(delta);
  M.entries.reserve(blocks);
  for (std::size_t t = 0; t < blocks; ++t) M.entries.push_back(std::move(sig[rep[t]]));
  out.fused = std::move(M);
  return out;
}

std::vector<std::uint64_t> fused_valencies(const FusedEigenmatrix& M) {
  std::vector<std::uint64_t> v;
  v.reserve(M.entries[0].size());
  for (const auto& e : M.entries[0]) {
    long long k = e.as_integer();
    if (k <= 0) raise(errc::no_solution, "non-positive valency " + std::to_string(k));
    v.push_back(std::uint64_t(k));
  }
  return v;
}

IntersectionTensor intersection_numbers(const TranslationScheme& S, unsigned threads) {
  const FieldTable& F = S.field();
  std::uint64_t qm1 = F.q() - 1;
  std::uint64_t N = S.base_N();
  std::size_t d = S.d();
  std::size_t dim = d + 1;

  // body storage N*d^2 plus the tensor; refuse what will not fit
  if (N * d * d + dim * dim * dim > (std::uint64_t(1) << 28))
    raise(errc::field_too_large, "intersection tensor would exceed the memory budget");

  IntersectionTensor T;
  T.d = d;
  T.valencies.assign(dim, 1);
  for (std::size_t k = 0; k < d; ++k) T.valencies[k + 1] = S.part_size(k);

  std::vector<std::vector<std::uint64_t>> body(N, std::vector<std::uint64_t>(d * d, 0));
  parallel_for(N, threads, [&](std::uint64_t t) {
    auto& b = body[t];
    for (std::uint64_t n = 0; n < qm1; ++n) {
      if (n == t) continue;
      std::uint32_t m = F.sub(t, n);
      b[std::size_t(S.part_of(m % N)) * d + S.part_of(n % N)] += 1;
    }
  });

  T.nums.assign(dim * dim * dim, 0);
  auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> std::uint64_t& {
    return T.nums[(i * dim + j) * dim + k];
  };
  at(0, 0, 0) = 1;
  for (std::size_t i = 1; i < dim; ++i) at(i, i, 0) = T.valencies[i];
  for (std::size_t k = 1; k < dim; ++k) {
    at(0, k, k) = 1;  // w = z
    at(k, 0, k) = 1;  // w = 0
  }
  for (std::size_t k = 0; k < d; ++k) {
    const auto& classes = S.parts()[k];
    const auto& first = body[classes[0]];
    for (std::size_t idx = 1; idx < classes.size() && T.constant_over_representatives; ++idx) {
      const auto& other = body[classes[idx]];
      for (std::size_t ij = 0; ij < d * d; ++ij)
        if (first[ij] != other[ij]) {
          T.constant_over_representatives = false;
          T.witness = "p[" + std::to_string(ij / d + 1) + "][" + std::to_string(ij % d + 1) +
                      "][" + std::to_string(k + 1) + "] = " + std::to_string(first[ij]) +
                      " at class " + std::to_string(classes[0]) + " but " +
                      std::to_string(other[ij]) + " at class " + std::to_string(classes[idx]);
          break;
        }
    }
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) at(i + 1, j + 1, k + 1) = first[i * d + j];
  }
  return T;
}

SchemeVerdict is_association_scheme(const IntersectionTensor& T) {
  SchemeVerdict v;
  if (!T.constant_over_representatives) {
    v.witness = T.witness;
    return v;
  }
  std::size_t dim = T.d + 1;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j)
      for (std::size_t k = 0; k < dim; ++k)
        if (T.at(i, j, k) != T.at(j, i, k)) {
          v.witness = "p[" + std::to_string(i) + "][" + std::to_string(j) + "][" +
                      std::to_string(k) + "] != p[" + std::to_string(j) + "][" +
                      std::to_string(i) + "][" + std::to_string(k) + "]";
          return v;
        }
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < dim; ++k) {
      std::uint64_t s = 0;
      for (std::size_t j = 0; j < dim; ++j) s += T.at(i, j, k);
      if (s != T.valencies[i]) {
        v.witness = "sum_j p[" + std::to_string(i) + "][j][" + std::to_string(k) + "] = " +
                    std::to_string(s) + ", expected k_i = " + std::to_string(T.valencies[i]);
        return v;
      }
    }
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      std::uint64_t want = i == j ? T.valencies[i] : 0;
      if (T.at(i, j, 0) != want) {
        v.witness = "p[" + std::to_string(i) + "][" + std::to_string(j) + "][0] = " +
                    std::to_string(T.at(i, j, 0));
        return v;
      }
    }
  v.ok = true;
  return v;
}

bool is_pseudocyclic(const IntersectionTensor& T) {
  if (T.d == 0) return false;
  std::uint64_t k = T.valencies[1];
  for (std::size_t j = 1; j <= T.d; ++j)
    if (T.valencies[j] != k) return false;
  for (std::size_t j = 1; j <= T.d; ++j) {
    std::uint64_t s = 0;
    for (std::size_t i = 1; i <= T.d; ++i) s += T.at(i, i, j);
    if (s != k - 1) return false;
  }
  return true;
}

PseudocyclicReport pseudocyclic_by_counting(const TranslationScheme& S, unsigned threads) {
  const FieldTable& F = S.field();
  std::uint64_t qm1 = F.q() - 1;
  std::uint64_t N = S.base_N();
  PseudocyclicReport rep;
  rep.k = S.part_size(0);
  for (std::size_t k = 1; k < S.d(); ++k)
    if (S.part_size(k) != rep.k) {
      rep.witness = "valency of part " + std::to_string(k) + " is " +
                    std::to_string(S.part_size(k)) + ", not " + std::to_string(rep.k);
      return rep;
    }
  std::vector<std::uint64_t> diag(N, 0);
  parallel_for(N, threads, [&](std::uint64_t t) {
    std::uint64_t c = 0;
    for (std::uint64_t n = 0; n < qm1; ++n) {
      if (n == t) continue;
      if (S.part_of(F.sub(t, n) % N) == S.part_of(n % N)) ++c;
    }
    diag[t] = c;
  });
  for (std::uint64_t t = 0; t < N; ++t)
    if (diag[t] != rep.k - 1) {
      rep.witness = "diagonal sum at class " + std::to_string(t) + " is " +
                    std::to_string(diag[t]) + ", expected " + std::to_string(rep.k - 1);
      return rep;
    }
  rep.ok = true;
  return rep;
}

TwoDesignReport two_design_check(const TranslationScheme& S) {
  const FieldTable& F = S.field();
  if (F.q() > (std::uint64_t(1) << 12))
    raise(errc::field_too_large, "two_design_check is capped at q = 4096");
  TwoDesignReport rep;
  rep.v = F.q();
  rep.k = S.part_size(0);
  for (std::size_t k = 1; k < S.d(); ++k)
    if (S.part_size(k) != rep.k)
      raise(errc::bad_partition, "two_design_check needs equal part sizes");
  rep.lambda = rep.k - 1;
  std::uint64_t qm1 = F.q() - 1;
  std::uint64_t N = S.base_N();
  for (std::uint64_t e = 0; e < qm1; ++e) {
    std::uint64_t lam = 0;
    for (std::uint64_t n = 0; n < qm1; ++n) {
      if (n == e) continue;
      if (S.part_of(F.sub(n, e) % N) == S.part_of(n % N)) ++lam;
    }
    if (lam != rep.k - 1) {
      rep.ok = false;
      rep.witness = "pair {0, gamma^" + std::to_string(e) + "} lies in " + std::to_string(lam) +
                    " blocks, expected " + std::to_string(rep.k - 1);
      return rep;
    }
  }
  rep.ok = true;
  return rep;
}

SrgReport srg_check(const FieldTable& F, std::uint64_t base_N,
                    const std::vector<std::uint32_t>& classes) {
  CycClasses cc = cyclotomic_classes(F, base_N);
  SrgReport rep;
  rep.v = F.q();
  std::vector<std::uint32_t> cls = classes;
  std::sort(cls.begin(), cls.end());
  if (std::adjacent_find(cls.begin(), cls.end()) != cls.end())
    raise(errc::bad_partition, "duplicate class index");
  for (std::uint32_t c : cls)
    if (c >= base_N) raise(errc::index_out_of_range, "class " + std::to_string(c));
  std::uint64_t s = F.p() == 2 ? 0 : ((F.q() - 1) / 2) % base_N;
  for (std::uint32_t c : cls)
    if (!std::binary_search(cls.begin(), cls.end(), std::uint32_t((c + s) % base_N)))
      raise(errc::bad_partition, "connection set is not symmetric at class " + std::to_string(c));

  rep.k = cls.size() * cc.class_size;
  if (cls.empty()) {
    rep.degenerate = SrgReport::Degenerate::empty;
    rep.distinct_values = {CycInt::integer(2, 0)};
    rep.all_rational_integers = true;
    return rep;
  }

  ClassTraceHistogram h(F, base_N);
  std::uint32_t p = std::uint32_t(F.p());
  rep.all_rational_integers = true;
  for (std::uint64_t a = 0; a < base_N; ++a) {
    CycInt val = CycInt::integer(p, 0);
    for (std::uint32_t c : cls) val = val + h.class_sum(c, a);
    bool fresh = true;
    for (const auto& seen : rep.distinct_values)
      if (seen == val) {
        fresh = false;
        break;
      }
    if (fresh) {
      if (!val.is_integer()) rep.all_rational_integers = false;
      rep.distinct_values.push_back(std::move(val));
    }
  }

  if (rep.distinct_values.size() == 1) {
    // trace forces theta = -k/(q-1): only the complete and empty graphs
    rep.degenerate = cls.size() == base_N ? SrgReport::Degenerate::complete
                                          : SrgReport::Degenerate::empty;
    return rep;
  }
  if (rep.distinct_values.size() == 2 && rep.all_rational_integers) {
    long long e0 = rep.distinct_values[0].as_integer();
    long long e1 = rep.distinct_values[1].as_integer();
    rep.r = std::max(e0, e1);
    rep.s = std::min(e0, e1);
    long long k = (long long)rep.k;
    rep.lam = k + rep.r + rep.s + rep.r * rep.s;
    rep.mu = k + rep.r * rep.s;
    assert(k * (k - rep.lam - 1) == ((long long)rep.v - k - 1) * rep.mu);
    rep.strongly_regular = true;
    if (rep.mu == 0) rep.degenerate = SrgReport::Degenerate::cliques;
  }
  return rep;
}

bool amorphy_check(std::uint64_t p, std::uint64_t N) {
  if (N == 0 || std::gcd(p, N) != 1)
    raise(errc::not_coprime, "gcd(p, N) must be 1");
  return is_semiprimitive(p, N);
}

std::string serialize_scheme(const TranslationScheme& S) {
  std::ostringstream os;
  const FieldSpec& spec = S.field().spec();
  os << "cycfuse-scheme 1\n";
  os << "p " << spec.p << " f " << spec.f << "\n";
  os << "modulus";
  for (std::uint32_t c : spec.modulus) os << ' ' << c;
  os << "\n";
  os << "base_N " << S.base_N() << "\n";
  os << "d " << S.d() << "\n";
  for (const auto& part : S.parts()) {
    os << "part";
    for (std::uint32_t c : part) os << ' ' << c;
    os << "\n";
  }
  return os.str();
}

namespace {

std::string next_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
  }
  raise(errc::parse_error, "unexpected end of scheme text");
}

}  // namespace

TranslationScheme parse_scheme(std::istream& in) {
  {
    std::istringstream ls(next_line(in));
    std::string magic;
    int ver = 0;
    if (!(ls >> magic >> ver) || magic != "cycfuse-scheme" || ver != 1)
      raise(errc::parse_error, "bad header, expected 'cycfuse-scheme 1'");
  }
  std::uint64_t p = 0;
  unsigned f = 0;
  {
    std::istringstream ls(next_line(in));
    std::string kp, kf;
    if (!(ls >> kp >> p >> kf >> f) || kp != "p" || kf != "f")
      raise(errc::parse_error, "bad field line");
  }
  std::vector<std::uint32_t> modulus;
  {
    std::istringstream ls(next_line(in));
    std::string key;
    if (!(ls >> key) || key != "modulus") raise(errc::parse_error, "bad modulus line");
    std::uint32_t c;
    while (ls >> c) modulus.push_back(c);
    if (modulus.size() != std::size_t(f) + 1)
      raise(errc::parse_error, "modulus must list f+1 digits");
  }
  std::uint64_t base_N = 0;
  {
    std::istringstream ls(next_line(in));
    std::string key;
    if (!(ls >> key >> base_N) || key != "base_N") raise(errc::parse_error, "bad base_N line");
  }
  std::size_t d = 0;
  {
    std::istringstream ls(next_line(in));
    std::string key;
    if (!(ls >> key >> d) || key != "d" || d == 0) raise(errc::parse_error, "bad d line");
  }
  std::vector<std::vector<std::uint32_t>> parts(d);
  for (std::size_t k = 0; k < d; ++k) {
    std::istringstream ls(next_line(in));
    std::string key;
    if (!(ls >> key) || key != "part") raise(errc::parse_error, "bad part line");
    std::uint32_t c;
    while (ls >> c) parts[k].push_back(c);
  }
  {
    std::string line;
    while (std::getline(in, line))
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        raise(errc::parse_error, "trailing content after parts");
  }
  FieldSpec canonical = find_field_spec(p, f);
  if (canonical.modulus != modulus)
    raise(errc::field_mismatch, "modulus is not the canonical one for (p, f)");
  return TranslationScheme(build_field_shared(p, f), base_N, std::move(parts));
}

TranslationScheme parse_scheme_text(const std::string& text) {
  std::istringstream in(text);
  return parse_scheme(in);
}

}  // namespace cycfuse
