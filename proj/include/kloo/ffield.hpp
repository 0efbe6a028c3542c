#pragma once

// F_{p^k} = F_p[x]/(h) for a monic irreducible h, with the absolute trace to F_p.

#include <cstdint>
#include <iterator>
#include <string>
#include <utility>
#include <vector>

#include "kloo/error.hpp"
#include "kloo/modular.hpp"

namespace kloo {

/// Polynomial over F_p, coefficients low degree first, no trailing zeros (zero = empty).
using FpPoly = std::vector<Int>;

namespace poly {

inline void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }

inline FpPoly sub(FpPoly a, const FpPoly& b, Int p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = mod(a[i] - b[i], p);
  trim(a);
  return a;
}

inline FpPoly mul(const FpPoly& a, const FpPoly& b, Int p) {
  if (a.empty() || b.empty()) return {};
  FpPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = mod(c[i + j] + mod_mul(a[i], b[j], p), p);
  trim(c);
  return c;
}

/// Remainder of a modulo b (b nonzero).
inline FpPoly rem(FpPoly a, const FpPoly& b, Int p) {
  const Int lead_inv = mod_inv(b.back(), p);
  while (degree(a) >= degree(b)) {
    const Int q = mod_mul(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = mod(a[shift + i] - mod_mul(q, b[i], p), p);
    trim(a);
  }
  return a;
}

inline FpPoly gcd(FpPoly a, FpPoly b, Int p) {
  while (!b.empty()) {
    FpPoly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline FpPoly powmod(FpPoly base, std::uint64_t e, const FpPoly& m, Int p) {
  FpPoly result{1};
  base = rem(std::move(base), m, p);
  while (e) {
    if (e & 1u) result = rem(mul(result, base, p), m, p);
    base = rem(mul(base, base, p), m, p);
    e >>= 1;
  }
  return result;
}

/// Ben-Or: h of degree k is irreducible iff gcd(h, x^{p^i} - x) = 1 for i <= k/2.
inline bool is_irreducible(const FpPoly& h, Int p) {
  const int k = degree(h);
  if (k < 1) return false;
  const FpPoly x{0, 1};
  FpPoly frob = x;
  for (int i = 1; 2 * i <= k; ++i) {
    frob = powmod(frob, static_cast<std::uint64_t>(p), h, p);
    if (degree(gcd(h, sub(frob, x, p), p)) > 0) return false;
  }
  return true;
}

}  // namespace poly

/// Smallest monic irreducible of degree k, counting the lower coefficients
/// as base-p digits with the constant term least significant.
inline FpPoly find_irreducible(Int p, int k) {
  require_odd_prime(p);
  if (k < 1) throw InvalidInput("extension degree must be positive");
  std::vector<Int> digits(static_cast<std::size_t>(k), 0);
  for (;;) {
    FpPoly h = digits;
    h.push_back(1);
    if (poly::is_irreducible(h, p)) return h;
    std::size_t i = 0;
    while (i < digits.size() && digits[i] == p - 1) digits[i++] = 0;
    ensure(i < digits.size(), "no irreducible polynomial found");
    ++digits[i];
  }
}

/// Polynomial representative of degree < k; always exactly k residues.
struct FieldElement {
  std::vector<Int> coeffs;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

class ExtensionField {
 public:
  ExtensionField(Int p, int k) : ExtensionField(p, find_irreducible(p, k), Trusted{}) {}

  ExtensionField(Int p, FpPoly modulus) : ExtensionField(p, std::move(modulus), Trusted{}) {
    if (!poly::is_irreducible(modulus_, p_)) throw InvalidInput("modulus is not irreducible");
  }

  Int p() const { return p_; }
  int k() const { return k_; }
  const FpPoly& modulus() const { return modulus_; }

  /// p^k; throws if it does not fit in 63 bits.
  std::uint64_t order() const {
    std::uint64_t q = 1;
    for (int i = 0; i < k_; ++i) {
      if (q > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(p_)) throw BudgetExceeded("field order overflows");
      q *= static_cast<std::uint64_t>(p_);
    }
    return q;
  }

  FieldElement zero() const { return FieldElement{std::vector<Int>(static_cast<std::size_t>(k_), 0)}; }
  FieldElement constant(Int c) const {
    FieldElement z = zero();
    z.coeffs[0] = mod(c, p_);
    return z;
  }
  /// The class of x (the constant x mod x when k = 1 is 0).
  FieldElement generator_x() const {
    if (k_ == 1) return constant(-modulus_[0]);
    FieldElement z = zero();
    z.coeffs[1] = 1;
    return z;
  }

  /// Element whose coefficient vector is the base-p expansion of index.
  FieldElement from_index(std::uint64_t index) const {
    FieldElement z = zero();
    for (int i = 0; i < k_; ++i) {
      z.coeffs[static_cast<std::size_t>(i)] = static_cast<Int>(index % static_cast<std::uint64_t>(p_));
      index /= static_cast<std::uint64_t>(p_);
    }
    return z;
  }

  bool is_zero(const FieldElement& z) const {
    for (Int c : z.coeffs)
      if (c != 0) return false;
    return true;
  }

  FieldElement add(const FieldElement& x, const FieldElement& y) const {
    FieldElement z = x;
    for (std::size_t i = 0; i < z.coeffs.size(); ++i) z.coeffs[i] = mod(z.coeffs[i] + y.coeffs[i], p_);
    return z;
  }

  FieldElement sub(const FieldElement& x, const FieldElement& y) const {
    FieldElement z = x;
    for (std::size_t i = 0; i < z.coeffs.size(); ++i) z.coeffs[i] = mod(z.coeffs[i] - y.coeffs[i], p_);
    return z;
  }

  FieldElement scale(const FieldElement& x, Int c) const {
    FieldElement z = x;
    for (auto& v : z.coeffs) v = mod_mul(v, c, p_);
    return z;
  }

  FieldElement mul(const FieldElement& x, const FieldElement& y) const {
    const std::size_t k = static_cast<std::size_t>(k_);
    std::vector<Int> prod(2 * k - 1, 0);
    for (std::size_t i = 0; i < k; ++i) {
      if (x.coeffs[i] == 0) continue;
      for (std::size_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + x.coeffs[i] * y.coeffs[j]) % p_;
    }
    // x^k = -(h_0 + ... + h_{k-1} x^{k-1})
    for (std::size_t deg = prod.size() - 1; deg >= k; --deg) {
      const Int c = prod[deg];
      if (c == 0) continue;
      prod[deg] = 0;
      for (std::size_t i = 0; i < k; ++i) prod[deg - k + i] = mod(prod[deg - k + i] - c * modulus_[i], p_);
    }
    prod.resize(k);
    return FieldElement{std::move(prod)};
  }

  FieldElement pow(FieldElement base, std::uint64_t e) const {
    FieldElement result = constant(1);
    while (e) {
      if (e & 1u) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

  FieldElement inv(const FieldElement& z) const {
    if (is_zero(z)) throw InvalidInput("zero has no inverse");
    return pow(z, order() - 2);
  }

 private:
  struct Trusted {};
  ExtensionField(Int p, FpPoly modulus, Trusted) : p_(p), k_(poly::degree(modulus)), modulus_(std::move(modulus)) {
    require_odd_prime(p_);
    if (p_ >= (Int{1} << 31)) throw InvalidInput("p must be below 2^31");
    if (k_ < 1 || modulus_.back() != 1) throw InvalidInput("modulus must be monic of positive degree");
    for (Int c : modulus_)
      if (c < 0 || c >= p_) throw InvalidInput("modulus coefficients must be reduced mod p");
  }

  Int p_;
  int k_;
  FpPoly modulus_;
};

/// z + z^p + ... + z^{p^{k-1}}, returned as a residue mod p.
inline Int absolute_trace(const ExtensionField& F, const FieldElement& z) {
  FieldElement sum = F.zero(), conj = z;
  for (int i = 0; i < F.k(); ++i) {
    sum = F.add(sum, conj);
    conj = F.pow(conj, static_cast<std::uint64_t>(F.p()));
  }
  for (std::size_t i = 1; i < sum.coeffs.size(); ++i)
    ensure(sum.coeffs[i] == 0, "trace left the prime field; modulus is not irreducible");
  return sum.coeffs[0];
}

/// Trace as the F_p-linear form z -> sum_j c_j Tr(x^j).
class LinearTrace {
 public:
  explicit LinearTrace(const ExtensionField& F) : p_(F.p()) {
    FieldElement xj = F.constant(1);
    const FieldElement x = F.generator_x();
    for (int j = 0; j < F.k(); ++j) {
      basis_traces_.push_back(absolute_trace(F, xj));
      xj = F.mul(xj, x);
    }
  }

  Int operator()(const FieldElement& z) const {
    Int t = 0;
    for (std::size_t j = 0; j < basis_traces_.size(); ++j) t += z.coeffs[j] * basis_traces_[j];
    return mod(t, p_);
  }

 private:
  Int p_;
  std::vector<Int> basis_traces_;
};

/// The p^k - 1 nonzero elements in coefficient-vector counting order.
class NonzeroElements {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = FieldElement;
    using difference_type = std::ptrdiff_t;
    using pointer = const FieldElement*;
    using reference = const FieldElement&;

    iterator(const ExtensionField* F, std::uint64_t index) : F_(F), index_(index) {}
    FieldElement operator*() const { return F_->from_index(index_); }
    iterator& operator++() {
      ++index_;
      return *this;
    }
    iterator operator++(int) {
      iterator t = *this;
      ++index_;
      return t;
    }
    friend bool operator==(const iterator& l, const iterator& r) { return l.index_ == r.index_; }

   private:
    const ExtensionField* F_;
    std::uint64_t index_;
  };

  NonzeroElements(const ExtensionField& F, std::uint64_t limit) : F_(&F), count_(F.order() - 1) {
    if (count_ > limit)
      throw BudgetExceeded("field has " + std::to_string(count_) + " nonzero elements, limit " + std::to_string(limit));
  }

  iterator begin() const { return iterator(F_, 1); }
  iterator end() const { return iterator(F_, count_ + 1); }
  std::uint64_t size() const { return count_; }

 private:
  const ExtensionField* F_;
  std::uint64_t count_;
};

inline NonzeroElements enumerate_nonzero(const ExtensionField& F, std::uint64_t limit = 100'000'000) {
  return NonzeroElements(F, limit);
}

namespace detail {
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    out.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) out.push_back(n);
  return out;
}
}  // namespace detail

/// First element (counting order) generating the multiplicative group.
inline FieldElement primitive_element(const ExtensionField& F) {
  const std::uint64_t N = F.order() - 1;
  const auto factors = detail::prime_factors(N);
  for (std::uint64_t idx = 1; idx <= N; ++idx) {
    const FieldElement g = F.from_index(idx);
    bool generates = true;
    for (std::uint64_t q : factors)
      if (F.pow(g, N / q) == F.constant(1)) {
        generates = false;
        break;
      }
    if (generates) return g;
  }
  throw InvariantViolation("multiplicative group has no generator");
}

}  // namespace kloo
