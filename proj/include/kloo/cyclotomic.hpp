#pragma once

// Elements of Z[zeta_p] in the integral power basis 1, zeta, ..., zeta^{p-2}.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kloo/error.hpp"
#include "kloo/modular.hpp"
#include "kloo/rational.hpp"

namespace kloo {

using BigInt = boost::multiprecision::cpp_int;

class CyclotomicInteger {
 public:
  explicit CyclotomicInteger(Int p) : p_(p), c_(static_cast<std::size_t>(p - 1)) { require_odd_prime(p); }

  CyclotomicInteger(Int p, std::vector<BigInt> coeffs) : CyclotomicInteger(p) {
    if (coeffs.size() > c_.size()) throw InvalidInput("too many power-basis coefficients");
    std::move(coeffs.begin(), coeffs.end(), c_.begin());
  }

  static CyclotomicInteger constant(Int p, const BigInt& value) {
    CyclotomicInteger z(p);
    z.c_[0] = value;
    return z;
  }

  /// zeta^e for any integer e.
  static CyclotomicInteger zeta_power(Int p, Int e) {
    CyclotomicInteger z(p);
    z.add_zeta_power(e, 1);
    return z;
  }

  /// sum_c counts[c] zeta^c over c = 0..p-1.
  static CyclotomicInteger from_counts(Int p, const std::vector<std::uint64_t>& counts) {
    if (counts.size() != static_cast<std::size_t>(p)) throw InvalidInput("need one count per residue");
    CyclotomicInteger z(p);
    const BigInt top = counts.back();
    for (std::size_t j = 0; j + 1 < counts.size(); ++j) z.c_[j] = BigInt(counts[j]) - top;
    return z;
  }

  Int p() const { return p_; }
  const std::vector<BigInt>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  /// this += m * zeta^e, folding zeta^{p-1} = -(1 + ... + zeta^{p-2}).
  void add_zeta_power(Int e, const BigInt& m) {
    const std::size_t r = static_cast<std::size_t>(mod(e, p_));
    if (r + 1 < static_cast<std::size_t>(p_)) {
      c_[r] += m;
    } else {
      for (auto& x : c_) x -= m;
    }
  }

  CyclotomicInteger& operator+=(const CyclotomicInteger& o) {
    require_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  CyclotomicInteger& operator-=(const CyclotomicInteger& o) {
    require_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  CyclotomicInteger& operator*=(const BigInt& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

  friend CyclotomicInteger operator+(CyclotomicInteger l, const CyclotomicInteger& r) { return l += r; }
  friend CyclotomicInteger operator-(CyclotomicInteger l, const CyclotomicInteger& r) { return l -= r; }
  friend CyclotomicInteger operator-(CyclotomicInteger z) {
    for (auto& x : z.c_) x = -x;
    return z;
  }
  friend CyclotomicInteger operator*(CyclotomicInteger l, const BigInt& s) { return l *= s; }

  /// Product via cyclic convolution mod x^p - 1, then fold the top coefficient.
  friend CyclotomicInteger operator*(const CyclotomicInteger& l, const CyclotomicInteger& r) {
    l.require_same(r);
    const std::size_t p = static_cast<std::size_t>(l.p_);
    std::vector<BigInt> cyc(p);
    for (std::size_t i = 0; i + 1 < p; ++i) {
      if (l.c_[i] == 0) continue;
      for (std::size_t j = 0; j + 1 < p; ++j) cyc[(i + j) % p] += l.c_[i] * r.c_[j];
    }
    CyclotomicInteger out(l.p_);
    for (std::size_t i = 0; i + 1 < p; ++i) out.c_[i] = cyc[i] - cyc[p - 1];
    return out;
  }

  /// Exact division by a nonzero integer; nullopt when some coefficient is not divisible.
  std::optional<CyclotomicInteger> divide_exact(const BigInt& m) const {
    if (m == 0) throw InvalidInput("division by zero");
    CyclotomicInteger out(p_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] % m != 0) return std::nullopt;
      out.c_[i] = c_[i] / m;
    }
    return out;
  }

  friend bool operator==(const CyclotomicInteger&, const CyclotomicInteger&) = default;

  void require_same(const CyclotomicInteger& o) const {
    if (p_ != o.p_) throw InvalidInput("cyclotomic integers over different primes");
  }

 private:
  Int p_;
  std::vector<BigInt> c_;
};

inline std::string to_string(const CyclotomicInteger& z) {
  std::string s;
  for (std::size_t j = 0; j < z.coeffs().size(); ++j) {
    const BigInt& c = z.coeffs()[j];
    if (c == 0) continue;
    std::string term = c.str();
    if (j > 0) term += "*z^" + std::to_string(j);
    if (!s.empty() && c > 0) s += "+";
    s += term;
  }
  return s.empty() ? "0" : s;
}

inline Int p_adic_order(BigInt x, Int p) {
  Int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

/// ord_q(z) with q = p. Writing z = g(zeta) and g(1 - u) = sum_m b_m u^m,
/// each b_m u^m has (1 - zeta)-adic order (p-1) ord_p(b_m) + m; these are
/// distinct mod p-1, so the minimum is the order of z. Empty for z = 0.
inline std::optional<Rational> pi_adic_valuation(const CyclotomicInteger& z) {
  if (z.is_zero()) return std::nullopt;
  const Int p = z.p();
  const std::size_t len = z.coeffs().size();

  // binomial(j, m) table, j < p-1
  std::vector<std::vector<BigInt>> binom(len, std::vector<BigInt>(len, 0));
  for (std::size_t j = 0; j < len; ++j) {
    binom[j][0] = 1;
    for (std::size_t m = 1; m <= j; ++m) binom[j][m] = binom[j - 1][m - 1] + (m < j ? binom[j - 1][m] : BigInt(0));
  }

  std::optional<Int> best;
  for (std::size_t m = 0; m < len; ++m) {
    BigInt b = 0;
    for (std::size_t j = m; j < len; ++j) b += z.coeffs()[j] * binom[j][m];
    if (b == 0) continue;
    const Int order = (p - 1) * p_adic_order(b, p) + static_cast<Int>(m);
    if (!best || order < *best) best = order;
  }
  ensure(best.has_value(), "nonzero cyclotomic integer with all binomial coefficients zero");
  return Rational(*best, p - 1);
}

}  // namespace kloo
