#pragma once

// Lattice combinatorics for the generalized Kloosterman family
//
//   F(lambda, x) = sum_i x_i^{a_i} + lambda * prod_i x_i^{-d_i}.
//
// The Newton polytope has vertices 0, A_1..A_n (A_j = a_j e_j) and
// gamma = (-d_1, ..., -d_n). Its faces away from the origin are
// Delta_0 = conv(A_1..A_n) and Delta_k = conv({A_j : j != k} + gamma),
// and the cones over them tile Z^n. Everything here is exact.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "kloo/error.hpp"
#include "kloo/rational.hpp"

namespace kloo {

class KloostermanFamily {
 public:
  KloostermanFamily(std::vector<Int> a, std::vector<Int> d) : a_(std::move(a)), d_(std::move(d)) {
    if (a_.empty()) throw InvalidInput("family needs at least one variable");
    if (a_.size() != d_.size()) throw InvalidInput("exponent lists a and d differ in length");
    if (a_.size() > 30) throw InvalidInput("at most 30 variables are supported");
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (a_[i] < 1 || d_[i] < 1) throw InvalidInput("exponents a_i and d_i must be positive");
    }
  }

  std::size_t n() const { return a_.size(); }
  const std::vector<Int>& a() const { return a_; }
  const std::vector<Int>& d() const { return d_; }
  Int a(std::size_t i) const { return a_[i]; }
  Int d(std::size_t i) const { return d_[i]; }

  friend bool operator==(const KloostermanFamily&, const KloostermanFamily&) = default;

 private:
  std::vector<Int> a_;
  std::vector<Int> d_;
};

inline std::string describe(const KloostermanFamily& f) {
  auto join = [](const std::vector<Int>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
    return s;
  };
  return "a=(" + join(f.a()) + ") d=(" + join(f.d()) + ")";
}

/// Integer exponent vector; ordered lexicographically.
class LatticePoint {
 public:
  LatticePoint() = default;
  explicit LatticePoint(std::size_t n) : v_(n, 0) {}
  explicit LatticePoint(std::vector<Int> v) : v_(std::move(v)) {}
  LatticePoint(std::initializer_list<Int> v) : v_(v) {}

  std::size_t size() const { return v_.size(); }
  Int operator[](std::size_t i) const { return v_[i]; }
  Int& operator[](std::size_t i) { return v_[i]; }
  const std::vector<Int>& coords() const { return v_; }

  bool is_zero() const {
    return std::all_of(v_.begin(), v_.end(), [](Int x) { return x == 0; });
  }

  LatticePoint& operator+=(const LatticePoint& o) {
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
  }
  LatticePoint& operator-=(const LatticePoint& o) {
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
  }
  friend LatticePoint operator+(LatticePoint l, const LatticePoint& r) { return l += r; }
  friend LatticePoint operator-(LatticePoint l, const LatticePoint& r) { return l -= r; }
  friend LatticePoint operator*(Int s, LatticePoint p) {
    for (auto& x : p.v_) x *= s;
    return p;
  }

  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;

 private:
  std::vector<Int> v_;
};

inline std::string to_string(const LatticePoint& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

inline std::ostream& operator<<(std::ostream& os, const LatticePoint& v) { return os << to_string(v); }

struct LatticePointHash {
  std::size_t operator()(const LatticePoint& v) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (std::size_t i = 0; i < v.size(); ++i) {
      h ^= std::hash<Int>{}(v[i]) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

/// A_j: a_j in coordinate j (0-based), zero elsewhere.
inline LatticePoint support_vertex(const KloostermanFamily& f, std::size_t j) {
  LatticePoint v(f.n());
  v[j] = f.a(j);
  return v;
}

/// gamma = (-d_1, ..., -d_n), the exponent of the lambda term.
inline LatticePoint gamma_vertex(const KloostermanFamily& f) {
  LatticePoint v(f.n());
  for (std::size_t i = 0; i < f.n(); ++i) v[i] = -f.d(i);
  return v;
}

/// Supp(F) in the order A_1, ..., A_n, gamma.
inline std::vector<LatticePoint> support(const KloostermanFamily& f) {
  std::vector<LatticePoint> s;
  for (std::size_t j = 0; j < f.n(); ++j) s.push_back(support_vertex(f, j));
  s.push_back(gamma_vertex(f));
  return s;
}

inline Int e_star(const KloostermanFamily& f) {
  if (f.n() == 1) return lcm(f.a(0), f.d(0));
  Int la = 1, ld = 1;
  for (std::size_t i = 0; i < f.n(); ++i) {
    la = lcm(la, f.a(i));
    ld = lcm(ld, f.d(i));
  }
  return la * ld;
}

/// Set of face indices k in {0..n}; bit k set iff the point lies in C(Delta_k).
class ConeSet {
 public:
  constexpr ConeSet() = default;
  constexpr explicit ConeSet(std::uint32_t mask) : mask_(mask) {}

  constexpr bool contains(std::size_t k) const { return (mask_ >> k) & 1u; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr bool intersects(ConeSet o) const { return (mask_ & o.mask_) != 0; }
  constexpr std::uint32_t mask() const { return mask_; }
  int size() const { return __builtin_popcount(mask_); }
  void insert(std::size_t k) { mask_ |= (1u << k); }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < 32; ++k)
      if (contains(k)) out.push_back(k);
    return out;
  }

  friend constexpr bool operator==(ConeSet, ConeSet) = default;

 private:
  std::uint32_t mask_ = 0;
};

inline bool in_cone(const KloostermanFamily& f, const LatticePoint& u, std::size_t k) {
  const std::size_t n = f.n();
  if (k == 0) {
    for (std::size_t i = 0; i < n; ++i)
      if (u[i] < 0) return false;
    return true;
  }
  const std::size_t c = k - 1;
  if (u[c] > 0) return false;
  // u_j - (d_j/d_c) u_c >= 0, scaled by d_c > 0
  for (std::size_t j = 0; j < n; ++j) {
    if (j != c && f.d(c) * u[j] - f.d(j) * u[c] < 0) return false;
  }
  return true;
}

inline ConeSet cone_membership(const KloostermanFamily& f, const LatticePoint& u) {
  if (u.size() != f.n()) throw InvalidInput("lattice point has wrong dimension");
  ConeSet s;
  for (std::size_t k = 0; k <= f.n(); ++k)
    if (in_cone(f, u, k)) s.insert(k);
  ensure(!s.empty(), [&] { return "cones failed to cover " + to_string(u); });
  return s;
}

/// Zero is in every cone, so it is cofacial with everything.
inline bool cofacial(const KloostermanFamily& f, const LatticePoint& u, const LatticePoint& v) {
  return cone_membership(f, u).intersects(cone_membership(f, v));
}

struct Weight {
  Rational value;

  friend bool operator==(const Weight&, const Weight&) = default;
  friend bool operator<(const Weight& l, const Weight& r) { return l.value < r.value; }
  friend bool operator<=(const Weight& l, const Weight& r) { return l.value <= r.value; }
};

/// Closed-form weight on each cone, held as integer coefficients scaled by e*:
///   e* w(u) = sum_i coeff[k][i] * u_i   for u in C(Delta_k).
/// On C(Delta_0) the form is sum u_i/a_i. On C(Delta_k) it is
///   u_k / (-d_k / (1 + sum_i d_i/a_i - d_k/a_k)) + sum_i u_i/a_i - u_k/a_k.
class WeightEvaluator {
 public:
  explicit WeightEvaluator(const KloostermanFamily& f) : family_(f), e_star_(kloo::e_star(f)) {
    const std::size_t n = f.n();
    coeff_.assign(n + 1, std::vector<Int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) coeff_[0][i] = scaled(Rational(1, f.a(i)));
    for (std::size_t k = 1; k <= n; ++k) {
      const std::size_t c = k - 1;
      Rational denom_sum = 1;
      for (std::size_t i = 0; i < n; ++i) denom_sum += Rational(f.d(i), f.a(i));
      denom_sum -= Rational(f.d(c), f.a(c));
      const Rational uk_coeff = Rational(1) / (Rational(-f.d(c)) / denom_sum);
      for (std::size_t i = 0; i < n; ++i)
        coeff_[k][i] = (i == c) ? scaled(uk_coeff) : scaled(Rational(1, f.a(i)));
    }
  }

  const KloostermanFamily& family() const { return family_; }
  Int e_star() const { return e_star_; }

  /// e* times the face functional of Delta_k at u (valid when u is in C(Delta_k)).
  Int scaled_face_value(std::size_t k, const LatticePoint& u) const {
    Int s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += coeff_[k][i] * u[i];
    return s;
  }

  /// e* w(u); evaluates every applicable cone formula and insists they agree.
  Int scaled_weight(const LatticePoint& u) const {
    const ConeSet cones = cone_membership(family_, u);
    bool first = true;
    Int value = 0;
    for (std::size_t k = 0; k <= family_.n(); ++k) {
      if (!cones.contains(k)) continue;
      const Int w = scaled_face_value(k, u);
      if (first) {
        value = w;
        first = false;
      } else if (w != value) {
        throw InvariantViolation("weight formulas disagree on cone boundary at " + to_string(u));
      }
    }
    ensure(value >= 0, [&] { return "negative weight at " + to_string(u); });
    return value;
  }

  Weight weight(const LatticePoint& u) const { return Weight{Rational(scaled_weight(u), e_star_)}; }

 private:
  Int scaled(const Rational& r) const {
    const Rational s = r * e_star_;
    ensure(s.denominator() == 1, "weight coefficient denominator does not divide e*");
    return s.numerator();
  }

  KloostermanFamily family_;
  Int e_star_;
  std::vector<std::vector<Int>> coeff_;
};

inline Weight weight(const KloostermanFamily& f, const LatticePoint& v) {
  return WeightEvaluator(f).weight(v);
}

/// -d_i < v_i <= a_i for every i.
inline bool in_box(const KloostermanFamily& f, const LatticePoint& v) {
  for (std::size_t i = 0; i < f.n(); ++i)
    if (v[i] <= -f.d(i) || v[i] > f.a(i)) return false;
  return true;
}

/// (d_j/d_i)(v_i - a_i) <= v_j < (d_j/d_i) v_i + a_j, cross-multiplied by d_i.
inline bool pair_condition(const KloostermanFamily& f, const LatticePoint& v, std::size_t i, std::size_t j) {
  const Int lhs = f.d(i) * v[j];
  return f.d(j) * (v[i] - f.a(i)) <= lhs && lhs < f.d(j) * v[i] + f.d(i) * f.a(j);
}

inline bool in_basis(const KloostermanFamily& f, const LatticePoint& v) {
  if (!in_box(f, v)) return false;
  for (std::size_t j = 1; j < f.n(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (!pair_condition(f, v, i, j)) return false;
  return true;
}

inline Int basis_cardinality_formula(const KloostermanFamily& f) {
  const std::size_t n = f.n();
  Int prod = 1;
  for (std::size_t i = 0; i < n; ++i) prod *= f.a(i);
  Int total = prod;
  for (std::size_t j = 0; j < n; ++j) {
    Int term = f.d(j);
    for (std::size_t i = 0; i < n; ++i)
      if (i != j) term *= f.a(i);
    total += term;
  }
  return total;
}

struct BasisSet {
  std::vector<LatticePoint> points;
  std::vector<Weight> weights;

  std::size_t size() const { return points.size(); }
};

namespace detail {

// Lexicographic walk over the box; `accept(v, j)` checks coordinate j against
// coordinates 0..j-1 once they are all assigned.
template <class Accept, class Emit>
void walk_box(const KloostermanFamily& f, LatticePoint& v, std::size_t j, const Accept& accept, const Emit& emit) {
  if (j == f.n()) {
    emit(v);
    return;
  }
  for (Int x = -f.d(j) + 1; x <= f.a(j); ++x) {
    v[j] = x;
    if (accept(v, j)) walk_box(f, v, j + 1, accept, emit);
  }
  v[j] = 0;
}

inline bool prefix_pairs_ok(const KloostermanFamily& f, const LatticePoint& v, std::size_t j, std::size_t limit) {
  if (j >= limit) return true;
  for (std::size_t i = 0; i < j; ++i)
    if (!pair_condition(f, v, i, j)) return false;
  return true;
}

}  // namespace detail

/// The set B in lexicographic order, with weights. Checks |B| = n! Vol(Delta).
inline BasisSet enumerate_basis(const KloostermanFamily& f) {
  BasisSet out;
  const WeightEvaluator we(f);
  LatticePoint v(f.n());
  detail::walk_box(
      f, v, 0, [&](const LatticePoint& p, std::size_t j) { return detail::prefix_pairs_ok(f, p, j, f.n()); },
      [&](const LatticePoint& p) {
        out.points.push_back(p);
        out.weights.push_back(we.weight(p));
      });
  ensure(static_cast<Int>(out.size()) == basis_cardinality_formula(f),
         "basis count differs from n!Vol for " + describe(f));
  return out;
}

// ---------------------------------------------------------------------------
// Counting sets for n >= 2. All coordinates are 0-based; "n" below is the
// last coordinate.

namespace detail {

inline void require_multivariate(const KloostermanFamily& f) {
  if (f.n() < 2) throw InvalidInput("counting sets are defined for n >= 2 only");
}

// v_n >= (d_n/d_i) v_i + a_n
inline bool above_upper(const KloostermanFamily& f, const LatticePoint& v, std::size_t i) {
  const std::size_t l = f.n() - 1;
  return f.d(i) * v[l] >= f.d(l) * v[i] + f.d(i) * f.a(l);
}

// (d_n/d_i)(v_i - a_i) > v_n
inline bool below_lower(const KloostermanFamily& f, const LatticePoint& v, std::size_t i) {
  const std::size_t l = f.n() - 1;
  return f.d(l) * (v[i] - f.a(i)) > f.d(i) * v[l];
}

}  // namespace detail

inline bool in_A(const KloostermanFamily& f, const LatticePoint& v) {
  detail::require_multivariate(f);
  if (!in_box(f, v)) return false;
  for (std::size_t j = 1; j + 1 < f.n(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (!pair_condition(f, v, i, j)) return false;
  return true;
}

inline bool in_T_bar(const KloostermanFamily& f, const LatticePoint& v) {
  if (!in_A(f, v)) return false;
  for (std::size_t i = 0; i + 1 < f.n(); ++i)
    if (detail::above_upper(f, v, i)) return true;
  return false;
}

inline bool in_S(const KloostermanFamily& f, const LatticePoint& v) {
  if (!in_A(f, v)) return false;
  for (std::size_t i = 0; i + 1 < f.n(); ++i)
    if (detail::below_lower(f, v, i)) return true;
  return false;
}

inline bool in_M(const KloostermanFamily& f, const LatticePoint& v) {
  if (!in_A(f, v)) return false;
  const std::size_t l = f.n() - 1;
  if (v[l] <= f.a(l) - f.d(l)) return false;
  for (std::size_t i = 0; i < l; ++i)
    if (v[i] <= 0) return true;  // box already gives v_i > -d_i
  return false;
}

inline bool in_T(const KloostermanFamily& f, const LatticePoint& v) {
  if (!in_M(f, v)) return false;
  for (std::size_t j = 0; j + 1 < f.n(); ++j)
    if (detail::above_upper(f, v, j)) return false;
  return true;
}

inline std::vector<LatticePoint> enumerate_A(const KloostermanFamily& f) {
  detail::require_multivariate(f);
  std::vector<LatticePoint> out;
  LatticePoint v(f.n());
  detail::walk_box(
      f, v, 0, [&](const LatticePoint& p, std::size_t j) { return detail::prefix_pairs_ok(f, p, j, f.n() - 1); },
      [&](const LatticePoint& p) { out.push_back(p); });
  return out;
}

namespace detail {
template <class Pred>
std::vector<LatticePoint> filter_A(const KloostermanFamily& f, Pred pred) {
  std::vector<LatticePoint> out;
  for (auto& v : enumerate_A(f))
    if (pred(f, v)) out.push_back(std::move(v));
  return out;
}
}  // namespace detail

inline std::vector<LatticePoint> enumerate_A0(const KloostermanFamily& f) {
  return detail::filter_A(f, [](const KloostermanFamily& g, const LatticePoint& v) { return !in_basis(g, v); });
}
inline std::vector<LatticePoint> enumerate_T(const KloostermanFamily& f) { return detail::filter_A(f, in_T); }
inline std::vector<LatticePoint> enumerate_T_bar(const KloostermanFamily& f) { return detail::filter_A(f, in_T_bar); }
inline std::vector<LatticePoint> enumerate_S(const KloostermanFamily& f) { return detail::filter_A(f, in_S); }
inline std::vector<LatticePoint> enumerate_M(const KloostermanFamily& f) { return detail::filter_A(f, in_M); }

/// psi(v) = v + A_{i0} - A_n with i0 the least index among
/// {i < n : -d_i < v_i <= 0} attaining min v_i/d_i.
inline LatticePoint psi(const KloostermanFamily& f, const LatticePoint& v) {
  if (v.size() != f.n() || !in_T(f, v)) throw InvalidInput("psi: point " + to_string(v) + " is not in T");
  const std::size_t l = f.n() - 1;
  std::size_t i0 = l;
  for (std::size_t i = 0; i < l; ++i) {
    if (v[i] <= -f.d(i) || v[i] > 0) continue;
    // strict < keeps the least index on ties
    if (i0 == l || v[i] * f.d(i0) < v[i0] * f.d(i)) i0 = i;
  }
  ensure(i0 != l, "psi: empty index set");
  LatticePoint u = v;
  u[i0] += f.a(i0);
  u[l] -= f.a(l);
  return u;
}

/// phi(u) = u - A_{j0} + A_n with j0 the largest index among
/// {j < n : (d_n/d_j)(u_j - a_j) > u_n} attaining max (u_j - a_j)/d_j.
inline LatticePoint phi(const KloostermanFamily& f, const LatticePoint& u) {
  if (u.size() != f.n() || !in_S(f, u)) throw InvalidInput("phi: point " + to_string(u) + " is not in S");
  const std::size_t l = f.n() - 1;
  std::size_t j0 = l;
  for (std::size_t j = 0; j < l; ++j) {
    if (!detail::below_lower(f, u, j)) continue;
    // >= moves to the larger index on ties
    if (j0 == l || (u[j] - f.a(j)) * f.d(j0) >= (u[j0] - f.a(j0)) * f.d(j)) j0 = j;
  }
  ensure(j0 != l, "phi: empty index set");
  LatticePoint v = u;
  v[j0] -= f.a(j0);
  v[l] += f.a(l);
  return v;
}

}  // namespace kloo
