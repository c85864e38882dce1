#pragma once
#include <cstdint>
#include <utility>
#include <vector>

#include "cycfuse/error.hpp"

namespace cycfuse {

bool is_prime(std::uint64_t n);
std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t m);
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);

// Multiplicative order of p modulo N; requires gcd(p, N) = 1.
std::uint64_t mult_order(std::uint64_t p, std::uint64_t N);

// True iff -1 is a power of p modulo N (the semi-primitive / uniform
// cyclotomy condition).
bool is_semiprimitive(std::uint64_t p, std::uint64_t N);

// Legendre symbol (a / ell) for an odd prime ell.
int legendre(long long a, std::uint64_t ell);

enum class Index2Kind { semi_primitive, case1, case2, case3, other };

// For [(Z/N)^* : <p>] = 2 with N odd, the subgroup structure falls into three
// shapes: N = p1^m with p1 = 3 mod 4; N = p1^m p2^n with both components full
// order and {p1, p2} = {1, 3} mod 4; or the half-order variant on the second
// prime. p1/p2 carry the convention: case1 has p2 = 0; case2 orders p1 < p2;
// case3 puts the full-order prime in p1.
struct Index2Classification {
  Index2Kind kind = Index2Kind::other;
  std::uint64_t N = 0;
  std::uint64_t f = 0;  // mult_order(p, N)
  std::uint64_t p1 = 0, p2 = 0;
  unsigned m = 0, n = 0;
};

Index2Classification classify_index2(std::uint64_t p, std::uint64_t N);

// h(Q(sqrt(-D))) for squarefree D > 0, by counting reduced primitive positive
// definite forms of discriminant -D (D = 3 mod 4) or -4D.
std::uint64_t class_number(std::uint64_t D);

// Coefficient system b^2 + D c^2 = 4 p^h with p not dividing b, c; the sign of
// b is pinned by the congruence of the matching index-2 Gauss evaluation
// (b p^{h0} = -2 mod p1 in case 1, b = 2 p^{h/2} mod ell in case 2).
struct GaussCoeffs {
  long long b = 0;
  long long c_abs = 0;
  std::uint64_t h = 0;
  std::uint64_t h0 = 0;  // (f - h) / 2
  std::uint64_t D = 0;
  std::uint64_t p = 0;
  std::uint64_t f = 0;
};

GaussCoeffs solve_gauss_coeffs(std::uint64_t p, const Index2Classification& cls);

}  // namespace cycfuse
