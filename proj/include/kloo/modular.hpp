#pragma once

#include <cstdint>

#include "kloo/error.hpp"
#include "kloo/rational.hpp"

namespace kloo {

/// Least nonnegative residue.
inline Int mod(Int x, Int p) {
  const Int r = x % p;
  return r < 0 ? r + p : r;
}

inline Int mod_mul(Int x, Int y, Int p) {
  return static_cast<Int>((static_cast<__int128>(mod(x, p)) * mod(y, p)) % p);
}

inline Int mod_pow(Int base, std::uint64_t e, Int p) {
  Int result = 1 % p;
  base = mod(base, p);
  while (e) {
    if (e & 1u) result = mod_mul(result, base, p);
    base = mod_mul(base, base, p);
    e >>= 1;
  }
  return result;
}

inline Int mod_inv(Int x, Int p) {
  Int a = mod(x, p), m = p;
  if (a == 0) throw InvalidInput("zero has no inverse mod " + std::to_string(p));
  Int u = 1, v = 0;
  while (m != 0) {
    const Int q = a / m;
    Int t = a - q * m;
    a = m;
    m = t;
    t = u - q * v;
    u = v;
    v = t;
  }
  ensure(a == 1, "modulus is not prime");
  return mod(u, p);
}

inline bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

inline void require_odd_prime(Int p) {
  if (p <= 2 || !is_prime(p)) throw InvalidInput("p must be an odd prime, got " + std::to_string(p));
}

}  // namespace kloo
