#include "cycfuse/numth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cycfuse {

namespace {
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return std::uint64_t((unsigned __int128)a * b % m);
}
}  // namespace

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  // covers every Miller-Rabin witness below, so a % n is never 0 there
  for (std::uint64_t s :
       {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
    if (n % s == 0) return n == s;
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // deterministic Miller-Rabin witness set for 64-bit inputs
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = mod_pow(a % n, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> fs;
  for (std::uint64_t d = 2; d * d <= n; d += d == 2 ? 1 : 2) {
    if (n % d) continue;
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    fs.emplace_back(d, e);
  }
  if (n > 1) fs.emplace_back(n, 1);
  return fs;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t r = n;
  for (auto& [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

std::uint64_t mult_order(std::uint64_t p, std::uint64_t N) {
  if (N == 0) raise(errc::index_out_of_range, "N = 0");
  if (N == 1) return 1;
  if (std::gcd(p % N, N) != 1)
    raise(errc::not_coprime, std::to_string(p) + " mod " + std::to_string(N));
  std::uint64_t e = euler_phi(N);
  for (auto& [r, k] : factorize(e)) {
    (void)k;
    while (e % r == 0 && mod_pow(p, e / r, N) == 1) e /= r;
  }
  return e;
}

bool is_semiprimitive(std::uint64_t p, std::uint64_t N) {
  if (N <= 2) return true;  // -1 = 1 = p^0
  std::uint64_t t = mult_order(p, N);
  // <p> is cyclic; it contains -1 iff its unique order-2 element is -1.
  return t % 2 == 0 && mod_pow(p, t / 2, N) == N - 1;
}

int legendre(long long a, std::uint64_t ell) {
  if (ell < 3 || ell % 2 == 0 || !is_prime(ell)) raise(errc::bad_divisor, "ell must be an odd prime");
  long long r = a % (long long)ell;
  if (r < 0) r += ell;
  if (r == 0) return 0;
  return mod_pow(std::uint64_t(r), (ell - 1) / 2, ell) == 1 ? 1 : -1;
}

Index2Classification classify_index2(std::uint64_t p, std::uint64_t N) {
  if (N < 2) raise(errc::bad_divisor, "N = " + std::to_string(N));
  if (N % 2 == 0) raise(errc::even_modulus, "N = " + std::to_string(N));
  if (std::gcd(p % N, N) != 1)
    raise(errc::not_coprime, std::to_string(p) + " mod " + std::to_string(N));

  Index2Classification out;
  out.N = N;
  out.f = mult_order(p, N);
  if (is_semiprimitive(p, N)) {
    out.kind = Index2Kind::semi_primitive;
    return out;
  }
  std::uint64_t phi = euler_phi(N);
  if (phi != 2 * out.f) {
    out.kind = Index2Kind::other;
    return out;
  }
  auto fs = factorize(N);
  if (fs.size() == 1) {
    out.p1 = fs[0].first;
    out.m = fs[0].second;
    // index 2 in the cyclic group (Z/p1^m)^* puts <p> at the squares, and
    // -1 is a non-square exactly when p1 = 3 mod 4
    out.kind = out.p1 % 4 == 3 ? Index2Kind::case1 : Index2Kind::other;
    return out;
  }
  if (fs.size() == 2) {
    auto [r1, e1] = fs[0];
    auto [r2, e2] = fs[1];
    std::uint64_t pk1 = 1, pk2 = 1;
    for (unsigned i = 0; i < e1; ++i) pk1 *= r1;
    for (unsigned i = 0; i < e2; ++i) pk2 *= r2;
    std::uint64_t f1 = mult_order(p, pk1), f2 = mult_order(p, pk2);
    bool full1 = f1 == euler_phi(pk1), full2 = f2 == euler_phi(pk2);
    if (full1 && full2 && ((r1 % 4) ^ (r2 % 4)) == 2) {
      out.kind = Index2Kind::case2;
      out.p1 = r1;
      out.m = e1;
      out.p2 = r2;
      out.n = e2;
      return out;
    }
    if (full1 && r2 % 4 == 3 && 2 * f2 == euler_phi(pk2)) {
      out.kind = Index2Kind::case3;
      out.p1 = r1;
      out.m = e1;
      out.p2 = r2;
      out.n = e2;
      return out;
    }
    if (full2 && r1 % 4 == 3 && 2 * f1 == euler_phi(pk1)) {
      out.kind = Index2Kind::case3;
      out.p1 = r2;
      out.m = e2;
      out.p2 = r1;
      out.n = e1;
      return out;
    }
  }
  out.kind = Index2Kind::other;
  return out;
}

std::uint64_t class_number(std::uint64_t D) {
  if (D == 0) raise(errc::bad_divisor, "D = 0");
  for (auto& [r, e] : factorize(D))
    if (e > 1) raise(errc::not_squarefree, "D = " + std::to_string(D));
  long long disc = D % 4 == 3 ? -(long long)D : -4 * (long long)D;
  std::uint64_t h = 0;
  // reduced: |b| <= a <= c with b >= 0 when |b| = a or a = c
  for (long long a = 1; 3 * a * a <= -disc; ++a) {
    for (long long b = -a + 1; b <= a; ++b) {
      long long num = b * b - disc;
      if (num % (4 * a)) continue;
      long long c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
      ++h;
    }
  }
  return h;
}

GaussCoeffs solve_gauss_coeffs(std::uint64_t p, const Index2Classification& cls) {
  if (cls.kind != Index2Kind::case1 && cls.kind != Index2Kind::case2)
    raise(errc::unsupported_case, "coefficient system only covers index-2 cases 1 and 2");
  GaussCoeffs out;
  out.p = p;
  out.f = cls.f;
  out.D = cls.kind == Index2Kind::case1 ? cls.p1 : cls.p1 * cls.p2;
  out.h = class_number(out.D);
  if ((out.f - out.h) % 2)
    raise(errc::no_solution, "h = " + std::to_string(out.h) + " and f = " + std::to_string(out.f) +
                                 " have opposite parity, h0 = (f - h)/2 is not integral");
  out.h0 = (out.f - out.h) / 2;

  long long target = 1;
  for (std::uint64_t i = 0; i < out.h; ++i) {
    if (target > (long long)(std::uint64_t(1) << 62) / (long long)p)
      raise(errc::overflow, "4 p^h overflows");
    target *= (long long)p;
  }
  target *= 4;

  std::uint64_t ell = 0;
  long long bres = 0, lmod = 0;
  if (cls.kind == Index2Kind::case1) {
    // b p^{h0} = -2 (mod p1)
    lmod = (long long)cls.p1;
    // reduce p^{h0} mod p1 first; b is recovered by testing candidates below
  } else {
    if (out.h % 2)
      raise(errc::no_solution,
            "case 2 congruence needs p^{h/2} integral but h = " + std::to_string(out.h));
    ell = cls.p1 % 4 == 3 ? cls.p1 : cls.p2;
    lmod = (long long)ell;
    bres = 2 * (long long)mod_pow(p, out.h / 2, ell) % lmod;
  }

  std::vector<std::pair<long long, long long>> sols;
  auto isqrt = [](long long n) {
    long long r = (long long)std::llround(std::sqrt((double)n));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
  };
  auto try_pair = [&](long long b, long long c) {
    if (b == 0 || b % (long long)p == 0 || c % (long long)p == 0) return;
    long long lhs;
    if (cls.kind == Index2Kind::case1) {
      lhs = (b % lmod) * (long long)mod_pow(p, out.h0, cls.p1) % lmod;
      if (((lhs + 2) % lmod + lmod) % lmod != 0) return;
    } else {
      lhs = ((b - bres) % lmod + lmod) % lmod;
      if (lhs != 0) return;
    }
    sols.emplace_back(b, c);
  };
  // c's range is a factor sqrt(D) shorter than b's
  long long cmax = isqrt((target - 1) / (long long)out.D);
  if (cmax > (long long)1 << 28) raise(errc::overflow, "coefficient scan too large");
  for (long long c = 1; c <= cmax; ++c) {
    long long b2 = target - (long long)out.D * c * c;
    long long b = isqrt(b2);
    if (b * b != b2) continue;
    try_pair(b, c);
    try_pair(-b, c);
  }
  if (sols.empty()) raise(errc::no_solution, "no (b, c) satisfies the norm equation and congruence");
  if (sols.size() > 1)
    raise(errc::ambiguous_solution, std::to_string(sols.size()) + " coefficient pairs survive");
  out.b = sols[0].first;
  out.c_abs = sols[0].second;
  return out;
}

}  // namespace cycfuse
