#pragma once

// The associated graded ring of F_p[x^{+-1}] under the weight filtration,
// and reduction of monomials to the basis B modulo the Jacobian relations
// F_l = x_l dF/dx_l = a_l x^{A_l} - d_l lambda x^gamma.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kloo/error.hpp"
#include "kloo/lattice.hpp"
#include "kloo/modular.hpp"

namespace kloo {

/// Family, prime and lambda shared by every element of one graded ring.
struct GradedContext {
  KloostermanFamily family;
  Int p;
  Int lambda;

  GradedContext(KloostermanFamily f, Int prime, Int lam) : family(std::move(f)), p(prime), lambda(mod(lam, prime)) {
    require_odd_prime(p);
    if (lambda == 0) throw InvalidInput("lambda must be nonzero in F_p");
  }

  friend bool operator==(const GradedContext&, const GradedContext&) = default;
};

/// Finite F_p-linear combination of monomials; zero coefficients are never stored.
class GradedElement {
 public:
  explicit GradedElement(GradedContext ctx) : ctx_(std::move(ctx)) {}

  static GradedElement monomial(const GradedContext& ctx, const LatticePoint& v, Int c = 1) {
    GradedElement e(ctx);
    e.add_term(v, c);
    return e;
  }

  const GradedContext& context() const { return ctx_; }
  const std::map<LatticePoint, Int>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Int coefficient(const LatticePoint& v) const {
    auto it = terms_.find(v);
    return it == terms_.end() ? 0 : it->second;
  }

  void add_term(const LatticePoint& v, Int c) {
    if (v.size() != ctx_.family.n()) throw InvalidInput("monomial exponent has wrong dimension");
    const Int r = mod(c, ctx_.p);
    if (r == 0) return;
    auto [it, inserted] = terms_.try_emplace(v, r);
    if (!inserted) {
      it->second = mod(it->second + r, ctx_.p);
      if (it->second == 0) terms_.erase(it);
    }
  }

  GradedElement& operator+=(const GradedElement& o) {
    require_same(o);
    for (const auto& [v, c] : o.terms_) add_term(v, c);
    return *this;
  }

  GradedElement scaled(Int s) const {
    GradedElement out(ctx_);
    for (const auto& [v, c] : terms_) out.add_term(v, mod_mul(c, s, ctx_.p));
    return out;
  }

  void require_same(const GradedElement& o) const {
    if (!(ctx_ == o.ctx_)) throw InvalidInput("graded elements belong to different rings");
  }

  friend bool operator==(const GradedElement& l, const GradedElement& r) {
    return l.ctx_ == r.ctx_ && l.terms_ == r.terms_;
  }

 private:
  GradedContext ctx_;
  std::map<LatticePoint, Int> terms_;
};

/// x^u x^u' = x^{u+u'} when u, u' are cofacial, 0 otherwise.
inline GradedElement graded_multiply(const GradedElement& e1, const GradedElement& e2) {
  e1.require_same(e2);
  const auto& ctx = e1.context();
  GradedElement out(ctx);
  for (const auto& [u, c] : e1.terms()) {
    const ConeSet cu = cone_membership(ctx.family, u);
    for (const auto& [w, c2] : e2.terms()) {
      if (!cu.intersects(cone_membership(ctx.family, w))) continue;
      out.add_term(u + w, mod_mul(c, c2, ctx.p));
    }
  }
  return out;
}

/// F_l = a_l x^{A_l} - d_l lambda x^gamma, with l 0-based.
inline GradedElement jacobian_term(const GradedContext& ctx, std::size_t l) {
  const auto& f = ctx.family;
  if (l >= f.n()) throw InvalidInput("jacobian index out of range");
  if (mod(f.a(l), ctx.p) == 0 || mod(f.d(l), ctx.p) == 0)
    throw InvalidInput("p divides a_l or d_l; the family is degenerate");
  GradedElement e(ctx);
  e.add_term(support_vertex(f, l), f.a(l));
  e.add_term(gamma_vertex(f), -mod_mul(f.d(l), ctx.lambda, ctx.p));
  return e;
}

/// One summand multiplier * (F_l * x^u) of a relation.
struct RelationTerm {
  Int multiplier;
  std::size_t l;
  LatticePoint u;
};

inline GradedElement evaluate_relation(const GradedContext& ctx, const std::vector<RelationTerm>& rel) {
  GradedElement out(ctx);
  for (const auto& t : rel) {
    out += graded_multiply(jacobian_term(ctx, t.l), GradedElement::monomial(ctx, t.u)).scaled(t.multiplier);
  }
  return out;
}

inline std::string describe(const std::vector<RelationTerm>& rel) {
  std::string s;
  for (std::size_t i = 0; i < rel.size(); ++i) {
    const auto& t = rel[i];
    const Int m = t.multiplier;
    if (i) s += m < 0 ? " - " : " + ";
    else if (m < 0) s += "-";
    const Int am = m < 0 ? -m : m;
    if (am != 1) s += std::to_string(am) + "*";
    s += "F" + std::to_string(t.l + 1) + "*x^" + to_string(t.u);
  }
  return s;
}

/// x^from == factor * x^to (or == 0 when `to` is empty) modulo `relation`.
struct ReductionStep {
  std::string rule;
  std::vector<RelationTerm> relation;
  LatticePoint from;
  std::optional<LatticePoint> to;
  Int factor = 0;
};

struct ReductionResult {
  std::vector<std::pair<Int, LatticePoint>> combination;
  std::size_t steps = 0;
  std::vector<ReductionStep> chain;
};

inline std::uint64_t reduction_step_budget(const KloostermanFamily& f, const LatticePoint& v) {
  Int span = static_cast<Int>(f.n());
  for (std::size_t i = 0; i < f.n(); ++i) span += f.a(i) + f.d(i);
  Int norm = 0;
  for (std::size_t i = 0; i < v.size(); ++i) norm += v[i] < 0 ? -v[i] : v[i];
  return static_cast<std::uint64_t>(64 * span * std::max<Int>(1, norm));
}

namespace detail {

struct Move {
  std::string rule;
  std::vector<RelationTerm> relation;
};

// Moves the excess of coordinate `from` onto coordinate `to`:
// d_to F_from x^u - d_from F_to x^u with u = v - A_from. The gamma terms cancel
// identically, leaving d_to a_from x^v - d_from a_to x^{v - A_from + A_to}.
inline Move transfer(const KloostermanFamily& f, const LatticePoint& v, std::size_t from, std::size_t to,
                     std::string rule) {
  const LatticePoint u = v - support_vertex(f, from);
  return Move{std::move(rule), {{f.d(to), from, u}, {-f.d(from), to, u}}};
}

// One step for v in the box but outside B.
inline Move box_move(const KloostermanFamily& f, const LatticePoint& v) {
  const std::size_t n = f.n();
  auto in_M1 = [&](std::size_t i, std::size_t j) {  // v_j >= (d_j/d_i) v_i + a_j
    return f.d(i) * v[j] >= f.d(j) * v[i] + f.d(i) * f.a(j);
  };
  auto in_M2 = [&](std::size_t i, std::size_t j) {  // v_j < (d_j/d_i)(v_i - a_i)
    return f.d(i) * v[j] < f.d(j) * (v[i] - f.a(i));
  };
  // J = {j : (i,j) in M1 or (j,i) in M2}
  std::vector<bool> in_J(n, false);
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      if (in_M1(i, j)) in_J[j] = true;
      if (in_M2(i, j)) in_J[i] = true;
    }
  // j0: largest j in J maximising (v_j - a_j)/d_j
  std::size_t j0 = n;
  for (std::size_t j = 0; j < n; ++j) {
    if (!in_J[j]) continue;
    if (j0 == n || (v[j] - f.a(j)) * f.d(j0) >= (v[j0] - f.a(j0)) * f.d(j)) j0 = j;
  }
  ensure(j0 != n, [&] { return "box reduction found no violated pair at " + to_string(v); });
  // I = {i : (i,j0) in M1 or (j0,i) in M2}; i0: least i in I minimising v_i/d_i
  std::size_t i0 = n;
  for (std::size_t i = 0; i < n; ++i) {
    const bool member = (i < j0 && in_M1(i, j0)) || (i > j0 && in_M2(j0, i));
    if (!member) continue;
    if (i0 == n || v[i] * f.d(i0) < v[i0] * f.d(i)) i0 = i;
  }
  ensure(i0 != n, [&] { return "box reduction found no partner index at " + to_string(v); });
  return transfer(f, v, j0, i0, i0 < j0 ? "box:M1" : "box:M2");
}

inline Move choose_move(const KloostermanFamily& f, const LatticePoint& v) {
  const std::size_t n = f.n();
  if (in_box(f, v)) return box_move(f, v);

  auto first_excess = [&]() -> std::size_t {
    for (std::size_t j = 0; j < n; ++j)
      if (v[j] > f.a(j)) return j;
    return n;
  };
  const LatticePoint shifted = v - gamma_vertex(f);

  if (in_cone(f, v, 0)) {
    const std::size_t j = first_excess();
    ensure(j != n, [&] { return "point in C(Delta_0) outside the box without excess at " + to_string(v); });
    for (std::size_t k = 0; k < n; ++k)
      if (v[k] == 0) return transfer(f, v, j, k, "cone0:zero-coordinate");
    return Move{"cone0:interior", {{1, j, v - support_vertex(f, j)}}};
  }

  // v lies in C(Delta_i) exactly for the indices i minimising v_i/d_i.
  std::vector<std::size_t> argmin;
  for (std::size_t i = 0; i < n; ++i) {
    if (argmin.empty()) {
      argmin.push_back(i);
      continue;
    }
    const std::size_t m = argmin.front();
    const Int lhs = v[i] * f.d(m), rhs = v[m] * f.d(i);
    if (lhs < rhs) argmin.assign(1, i);
    else if (lhs == rhs) argmin.push_back(i);
  }
  const std::size_t i = argmin.front();
  ensure(v[i] < 0, [&] { return "point outside C(Delta_0) with nonnegative minimum at " + to_string(v); });
  const std::size_t k = first_excess();

  if (argmin.size() == 1) {
    if (k != n) return transfer(f, v, k, i, "cone:excess");
    ensure(v[i] <= -f.d(i), [&] { return "interior cone point should lie in the box at " + to_string(v); });
    return Move{v[i] < -f.d(i) ? "cone:deep" : "cone:gamma-edge", {{1, i, shifted}}};
  }
  if (v[i] < -f.d(i)) return Move{"cone:ridge-deep", {{1, argmin[1], shifted}}};
  if (v[i] == -f.d(i)) return Move{"cone:ridge-gamma-edge", {{1, i, shifted}}};
  ensure(k != n, [&] { return "ridge point should lie in the box at " + to_string(v); });
  return transfer(f, v, k, i, "cone:ridge-excess");
}

}  // namespace detail

/// Rewrites x^v as a combination of x^b, b in B, modulo sum_l F_l R.
/// Each step applies an explicit relation computed with the graded product,
/// so every congruence in the chain is exact.
inline ReductionResult reduce_monomial(const GradedContext& ctx, const LatticePoint& v) {
  const auto& f = ctx.family;
  if (v.size() != f.n()) throw InvalidInput("monomial exponent has wrong dimension");
  for (std::size_t i = 0; i < f.n(); ++i)
    if (mod(f.a(i), ctx.p) == 0 || mod(f.d(i), ctx.p) == 0)
      throw InvalidInput("p divides some a_i d_i; the family is degenerate");

  const WeightEvaluator we(f);
  const Int target_weight = we.scaled_weight(v);
  const std::uint64_t budget = reduction_step_budget(f, v);

  ReductionResult out;
  std::map<LatticePoint, Int> pending{{v, 1}};
  std::map<LatticePoint, Int> done;
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const LatticePoint cur = node.key();
    const Int coeff = node.mapped();
    if (coeff == 0) continue;
    if (in_basis(f, cur)) {
      Int& slot = done[cur];
      slot = mod(slot + coeff, ctx.p);
      continue;
    }
    if (out.steps >= budget)
      throw InvariantViolation("reduction step budget exhausted at " + to_string(cur) + " (start " + to_string(v) +
                               ")");
    ++out.steps;

    detail::Move move = detail::choose_move(f, cur);
    const GradedElement rel = evaluate_relation(ctx, move.relation);
    const Int lead = rel.coefficient(cur);
    if (lead == 0)
      throw InvariantViolation("relation " + describe(move.relation) + " does not involve x^" + to_string(cur));
    const Int scale = mod(-mod_inv(lead, ctx.p), ctx.p);

    ReductionStep step{move.rule, move.relation, cur, std::nullopt, 0};
    for (const auto& [w, c] : rel.terms()) {
      if (w == cur) continue;
      ensure(we.scaled_weight(w) == target_weight,
             [&] { return "relation left the weight component at " + to_string(w); });
      const Int factor = mod_mul(c, scale, ctx.p);
      if (!step.to) {
        step.to = w;
        step.factor = factor;
      }
      Int& slot = pending[w];
      slot = mod(slot + mod_mul(coeff, factor, ctx.p), ctx.p);
    }
    out.chain.push_back(std::move(step));
  }
  for (const auto& [b, c] : done)
    if (c != 0) out.combination.emplace_back(c, b);
  return out;
}

/// Linear extension of reduce_monomial.
inline GradedElement reduce(const GradedElement& e) {
  GradedElement out(e.context());
  for (const auto& [v, c] : e.terms()) {
    for (const auto& [rc, b] : reduce_monomial(e.context(), v).combination)
      out.add_term(b, mod_mul(c, rc, e.context().p));
  }
  return out;
}

}  // namespace kloo
