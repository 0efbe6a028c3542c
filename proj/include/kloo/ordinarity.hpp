#pragma once

// Face matrices, invariant factors and the sufficient ordinarity criteria.
// The faces of Delta(F) away from the origin are fixed: Delta_0 spanned by
// A_1..A_n, and Delta_j spanned by {A_i : i != j} and gamma.

#include <cstdlib>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kloo/error.hpp"
#include "kloo/lattice.hpp"
#include "kloo/modular.hpp"
#include "kloo/polygon.hpp"

namespace kloo {

using IntMatrix = std::vector<std::vector<Int>>;

struct FaceMatrix {
  std::size_t face;
  IntMatrix matrix;  // columns are the support vectors on the face
};

struct InvariantFactors {
  std::vector<Int> s;  // s_1 | s_2 | ... | s_n

  Int largest() const { return s.back(); }
};

namespace detail {

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw InvariantViolation("integer overflow in matrix arithmetic");
  return r;
}

inline Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw InvariantViolation("integer overflow in matrix arithmetic");
  return r;
}

inline void require_square(const IntMatrix& m) {
  if (m.empty()) throw InvalidInput("matrix is empty");
  for (const auto& row : m)
    if (row.size() != m.size()) throw InvalidInput("matrix is not square");
}

}  // namespace detail

inline FaceMatrix face_matrix(const KloostermanFamily& f, std::size_t j) {
  const std::size_t n = f.n();
  if (j > n) throw InvalidInput("face index out of range");
  FaceMatrix fm{j, IntMatrix(n, std::vector<Int>(n, 0))};
  for (std::size_t col = 0; col < n; ++col) {
    const LatticePoint v = (j != 0 && col == j - 1) ? gamma_vertex(f) : support_vertex(f, col);
    for (std::size_t row = 0; row < n; ++row) fm.matrix[row][col] = v[row];
  }
  return fm;
}

/// Fraction-free (Bareiss) determinant.
inline Int determinant(IntMatrix m) {
  detail::require_square(m);
  const std::size_t n = m.size();
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t c = k + 1; c < n; ++c) {
        const __int128 num = static_cast<__int128>(m[i][c]) * m[k][k] - static_cast<__int128>(m[i][k]) * m[k][c];
        m[i][c] = static_cast<Int>(num / prev);
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

/// Diagonal of the Smith normal form. Pivot: smallest nonzero |entry|,
/// first in row-major scan of the active block.
inline InvariantFactors smith_normal_form(IntMatrix m) {
  detail::require_square(m);
  const std::size_t n = m.size();
  const Int det = determinant(m);
  if (det == 0) throw InvalidInput("matrix is singular");

  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      std::size_t pr = n, pc = n;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (m[i][j] != 0 && (pr == n || std::llabs(m[i][j]) < std::llabs(m[pr][pc]))) {
            pr = i;
            pc = j;
          }
      ensure(pr != n, "nonsingular matrix lost rank during reduction");
      std::swap(m[t], m[pr]);
      for (auto& row : m) std::swap(row[t], row[pc]);

      const Int piv = m[t][t];
      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        const Int q = m[i][t] / piv;
        for (std::size_t j = t; j < n; ++j) m[i][j] = detail::checked_sub(m[i][j], detail::checked_mul(q, m[t][j]));
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        const Int q = m[t][j] / piv;
        for (std::size_t i = t; i < n; ++i) m[i][j] = detail::checked_sub(m[i][j], detail::checked_mul(q, m[i][t]));
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      // The pivot must divide the rest of the block; otherwise fold a row in.
      std::size_t bad = n;
      for (std::size_t i = t + 1; i < n && bad == n; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (m[i][j] % piv != 0) {
            bad = i;
            break;
          }
      if (bad == n) break;
      for (std::size_t j = t; j < n; ++j) m[t][j] += m[bad][j];
    }
  }

  InvariantFactors out;
  Int prod = 1;
  for (std::size_t i = 0; i < n; ++i) {
    out.s.push_back(std::llabs(m[i][i]));
    prod = detail::checked_mul(prod, out.s.back());
  }
  for (std::size_t i = 0; i + 1 < n; ++i) ensure(out.s[i + 1] % out.s[i] == 0, "invariant factors fail to divide");
  ensure(prod == std::llabs(det), "invariant factors do not multiply to |det|");
  return out;
}

/// p does not divide prod a_i d_i, equivalently p is prime to every face determinant.
inline bool is_nondegenerate(const KloostermanFamily& f, Int p) {
  require_odd_prime(p);
  bool by_exponents = true;
  for (std::size_t i = 0; i < f.n(); ++i)
    if (f.a(i) % p == 0 || f.d(i) % p == 0) by_exponents = false;
  bool by_faces = true;
  for (std::size_t j = 0; j <= f.n(); ++j)
    if (std::gcd(p, determinant(face_matrix(f, j).matrix)) != 1) by_faces = false;
  ensure(by_exponents == by_faces, [&] { return "nondegeneracy criteria disagree for " + describe(f); });
  return by_exponents;
}

namespace detail {
inline void require_nondegenerate(const KloostermanFamily& f, Int p) {
  if (!is_nondegenerate(f, p))
    throw InvalidInput("family " + describe(f) + " is degenerate at p = " + std::to_string(p));
}
}  // namespace detail

/// p = 1 mod e* (sufficient for NP = HP).
inline bool ordinary_sufficient_estar(const KloostermanFamily& f, Int p) {
  detail::require_nondegenerate(f, p);
  return p % e_star(f) == 1 % e_star(f);
}

/// Largest invariant factor of each face matrix, in face order 0..n.
inline std::vector<Int> face_largest_factors(const KloostermanFamily& f) {
  std::vector<Int> out;
  for (std::size_t j = 0; j <= f.n(); ++j) out.push_back(smith_normal_form(face_matrix(f, j).matrix).largest());
  return out;
}

/// p = 1 mod s_n(Delta_j) for every face j (diagonal criterion on each face).
inline bool ordinary_sufficient_faces(const KloostermanFamily& f, Int p) {
  detail::require_nondegenerate(f, p);
  for (Int s : face_largest_factors(f))
    if (p % s != 1 % s) return false;
  return true;
}

/// For d = (1,...,1) with pairwise coprime a: the distinct values
/// sum_i u_i/a_i, 0 <= u_i <= a_i, each with multiplicity one.
inline std::optional<SlopeSequence> coprime_slope_sequence(const KloostermanFamily& f) {
  const std::size_t n = f.n();
  for (std::size_t i = 0; i < n; ++i) {
    if (f.d(i) != 1) return std::nullopt;
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::gcd(f.a(i), f.a(j)) != 1) return std::nullopt;
  }
  std::set<Rational> values;
  std::vector<Int> u(n, 0);
  for (;;) {
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i) s += Rational(u[i], f.a(i));
    values.insert(s);
    std::size_t i = 0;
    while (i < n && u[i] == f.a(i)) u[i++] = 0;
    if (i == n) break;
    ++u[i];
  }
  ensure(static_cast<Int>(values.size()) == basis_cardinality_formula(f),
         "slope set size differs from n!Vol for " + describe(f));
  SlopeSequence seq;
  for (const auto& v : values) seq.slopes.emplace_back(v, 1);
  return seq;
}

}  // namespace kloo
