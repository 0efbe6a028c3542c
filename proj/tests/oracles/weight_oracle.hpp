#pragma once

// Weight as a linear program: min sum alpha_s subject to sum alpha_s s = v,
// alpha >= 0, s over {A_1, ..., A_n, gamma}. The optimum sits at a basic
// feasible solution, so trying every n-subset of the support is exact.

#include <optional>
#include <vector>

#include "kloo/lattice.hpp"
#include "kloo/rational.hpp"

namespace oracle {

using kloo::Int;
using kloo::KloostermanFamily;
using kloo::LatticePoint;
using kloo::Rational;

// Solves M x = rhs exactly; empty if M is singular.
inline std::optional<std::vector<Rational>> solve(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs) {
  const std::size_t n = m.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == Rational(0)) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[c], m[piv]);
    std::swap(rhs[c], rhs[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == Rational(0)) continue;
      const Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) rhs[i] /= m[i][i];
  return rhs;
}

inline Rational lp_weight(const KloostermanFamily& f, const LatticePoint& v) {
  const std::size_t n = f.n();
  std::vector<LatticePoint> supp;
  for (std::size_t j = 0; j < n; ++j) supp.push_back(kloo::support_vertex(f, j));
  supp.push_back(kloo::gamma_vertex(f));

  std::optional<Rational> best;
  for (std::size_t skip = 0; skip <= n; ++skip) {
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
    std::size_t col = 0;
    for (std::size_t s = 0; s <= n; ++s) {
      if (s == skip) continue;
      for (std::size_t r = 0; r < n; ++r) m[r][col] = supp[s][r];
      ++col;
    }
    std::vector<Rational> rhs(n);
    for (std::size_t r = 0; r < n; ++r) rhs[r] = v[r];
    const auto x = solve(m, rhs);
    if (!x) continue;
    Rational total = 0;
    bool feasible = true;
    for (const auto& xi : *x) {
      if (xi < Rational(0)) feasible = false;
      total += xi;
    }
    if (feasible && (!best || total < *best)) best = total;
  }
  if (!best) throw std::logic_error("no feasible cone for " + kloo::to_string(v));
  return *best;
}

}  // namespace oracle
