#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace abeltrans {

using i128 = __int128;

/// Overflow-checked 64-bit helpers. All throw OverflowError.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
i128 checked_add128(i128 a, i128 b);
i128 checked_mul128(i128 a, i128 b);
std::int64_t narrow(i128 v);

/// Result in [0, m); m > 0.
inline i128 floor_mod(i128 a, i128 m) {
  i128 r = a % m;
  return r < 0 ? r + m : r;
}

inline i128 floor_div(i128 a, i128 m) {
  i128 q = a / m;
  if ((a % m != 0) && ((a < 0) != (m < 0))) --q;
  return q;
}

i128 gcd128(i128 a, i128 b);

struct ExtendedGcd {
  i128 g;  // >= 0
  i128 s;
  i128 t;  // s*a + t*b == g
};

/// Bezout coefficients with |s| <= |b|/g and |t| <= |a|/g.
ExtendedGcd xgcd(i128 a, i128 b);

std::int64_t checked_lcm(std::int64_t a, std::int64_t b);
std::int64_t checked_pow(std::int64_t base, unsigned exp);

/// Modular inverse of a modulo m (gcd must be 1).
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);

bool is_prime(std::uint64_t n);

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  bool operator==(const PrimePower&) const = default;
};

/// Prime factorization, primes ascending. factorize(1) is empty.
std::vector<PrimePower> factorize(std::uint64_t n);

std::uint64_t totient(std::uint64_t n);

/// Largest e with p^e | n (n > 0).
unsigned valuation(std::uint64_t n, std::uint64_t p);

/// p-part of n.
std::uint64_t prime_part(std::uint64_t n, std::uint64_t p);

/// If n is a prime power p^e (n > 1) returns {p, e}; otherwise {0, 0}.
PrimePower as_prime_power(std::uint64_t n);

std::string to_string(i128 v);

}  // namespace abeltrans
