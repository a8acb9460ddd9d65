#pragma once

#include <cstdint>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace acrn {

// Integer helpers on int64 residues. Moduli stay below 2^31 at desk scale, so
// products fit in 128 bits without care.

inline int64_t mod(int64_t a, int64_t m) {
  int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline int64_t mul_mod(int64_t a, int64_t b, int64_t m) {
  return static_cast<int64_t>(static_cast<__int128>(mod(a, m)) * mod(b, m) % m);
}

inline int64_t pow_mod(int64_t base, uint64_t e, int64_t m) {
  int64_t r = 1 % m;
  base = mod(base, m);
  while (e) {
    if (e & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return r;
}

inline int64_t ipow(int64_t base, int e) {
  if (e < 0) throw std::invalid_argument("ipow: negative exponent");
  int64_t r = 1;
  while (e-- > 0) r *= base;
  return r;
}

inline int64_t gcd64(int64_t a, int64_t b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Inverse of a mod m; throws if a is not invertible.
inline int64_t inv_mod(int64_t a, int64_t m) {
  int64_t old_r = mod(a, m), r = m;
  int64_t old_s = 1, s = 0;
  while (r) {
    int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1) throw std::invalid_argument("inv_mod: not invertible");
  return mod(old_s, m);
}

// p-adic valuation of a nonzero integer.
inline int vp(int64_t a, int64_t p) {
  if (a == 0) throw std::invalid_argument("vp: zero");
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

inline bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// (prime, exponent) pairs in increasing prime order.
inline std::vector<std::pair<int64_t, int>> factorize(int64_t n) {
  std::vector<std::pair<int64_t, int>> out;
  for (int64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

// Quadratic residue symbol (a/p) for an odd prime p, by Euler's criterion.
inline int legendre(int64_t a, int64_t p) {
  a = mod(a, p);
  if (a == 0) return 0;
  return pow_mod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

// Smallest positive g generating (Z/p^2)^x, hence (Z/p^k)^x for every k (p odd).
inline int64_t primitive_root_p2(int64_t p) {
  const int64_t m = p * p;
  const int64_t order = p * (p - 1);
  auto primes = factorize(order);
  for (int64_t g = 2; g < m; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (auto [q, e] : primes) {
      if (pow_mod(g, order / q, m) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("primitive_root_p2: none found");
}

}  // namespace acrn
