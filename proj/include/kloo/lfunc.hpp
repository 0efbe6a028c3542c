#pragma once

// Brute-force toric exponential sums, the L-polynomial over Z[zeta_p] and
// its q-adic Newton polygon (q = p).

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "kloo/cyclotomic.hpp"
#include "kloo/error.hpp"
#include "kloo/ffield.hpp"
#include "kloo/lattice.hpp"
#include "kloo/modular.hpp"
#include "kloo/ordinarity.hpp"
#include "kloo/polygon.hpp"

namespace kloo {

inline constexpr std::uint64_t kDefaultPointBudget = 100'000'000;

/// KLOO_BUDGET if set to a positive integer, else 10^8.
inline std::uint64_t default_point_budget() {
  if (const char* env = std::getenv("KLOO_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) throw InvalidInput("KLOO_BUDGET must be a positive integer");
    return v;
  }
  return kDefaultPointBudget;
}

/// (p^k - 1)^n, or nothing when it exceeds the budget (or 64 bits).
inline std::optional<std::uint64_t> torus_size(Int p, int k, std::size_t n, std::uint64_t budget) {
  std::uint64_t q = 1;
  for (int i = 0; i < k; ++i) {
    if (q > budget / static_cast<std::uint64_t>(p) + 1) return std::nullopt;
    q *= static_cast<std::uint64_t>(p);
  }
  const std::uint64_t side = q - 1;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (side != 0 && total > budget / side) return std::nullopt;
    total *= side;
  }
  if (total > budget) return std::nullopt;
  return total;
}

inline void require_within_budget(const KloostermanFamily& f, Int p, int k, std::uint64_t budget) {
  if (!torus_size(p, k, f.n(), budget))
    throw BudgetExceeded("S_" + std::to_string(k) + " at p = " + std::to_string(p) + " needs more than " +
                         std::to_string(budget) + " point evaluations");
}

/// N_c = #{x in (F_{p^k}^*)^n : Tr f(x) = c}, c = 0..p-1.
struct TraceCounts {
  int k;
  std::vector<std::uint64_t> counts;
};

namespace detail {

inline void require_sum_inputs(const KloostermanFamily& f, Int p, Int lambda) {
  require_nondegenerate(f, p);
  if (mod(lambda, p) == 0) throw InvalidInput("lambda must be nonzero mod p");
}

// Counts for x = (g^{e_1}, ..., g^{e_n}) with e_1 in [lo, hi).
inline void count_range(const KloostermanFamily& f, Int p, Int lambda, const std::vector<std::uint32_t>& trace_of_power,
                        std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t>& counts) {
  const std::size_t n = f.n();
  const std::uint64_t N = trace_of_power.size();
  std::vector<std::uint64_t> step_a(n), step_d(n);
  for (std::size_t i = 0; i < n; ++i) {
    step_a[i] = static_cast<std::uint64_t>(f.a(i)) % N;
    step_d[i] = static_cast<std::uint64_t>(f.d(i)) % N;
  }
  const auto P = static_cast<std::uint64_t>(p);
  const auto lam = static_cast<std::uint64_t>(mod(lambda, p));

  // Odometer over e_1..e_{n-1}; prefix holds sum_i Tr(g^{a_i e_i}) and sum_i d_i e_i.
  std::vector<std::uint64_t> e(n, 0), tr_prefix(n + 1, 0), dsum_prefix(n + 1, 0);
  const std::size_t outer = n - 1;
  auto set_prefix = [&](std::size_t from) {
    for (std::size_t i = from; i < outer; ++i) {
      tr_prefix[i + 1] = tr_prefix[i] + trace_of_power[(e[i] * step_a[i]) % N];
      dsum_prefix[i + 1] = (dsum_prefix[i] + e[i] * step_d[i]) % N;
    }
  };

  auto inner = [&]() {
    const std::uint64_t base = tr_prefix[outer] % P;
    std::uint64_t ia = 0;                                 // a_n e_n mod N
    std::uint64_t ib = (N - dsum_prefix[outer] % N) % N;  // -(sum d_i e_i) mod N
    const std::uint64_t sa = step_a[outer], sd = step_d[outer];
    for (std::uint64_t en = 0; en < N; ++en) {
      const std::uint64_t t = base + trace_of_power[ia] + lam * trace_of_power[ib];
      ++counts[t % P];
      ia += sa;
      if (ia >= N) ia -= N;
      ib = ib >= sd ? ib - sd : ib + N - sd;
    }
  };

  if (n == 1) {
    if (lo == 0) inner();
    return;
  }
  for (std::uint64_t first = lo; first < hi; ++first) {
    e.assign(n, 0);
    e[0] = first;
    set_prefix(0);
    for (;;) {
      inner();
      std::size_t i = outer;
      while (i > 1 && e[i - 1] + 1 == N) e[--i] = 0;
      if (i == 1) break;
      ++e[i - 1];
      set_prefix(i - 1);
    }
  }
}

}  // namespace detail

/// Trace-value counts via a primitive element and a table of Tr(g^e).
/// The first coordinate is partitioned across threads.
inline TraceCounts trace_counts(const KloostermanFamily& f, Int p, Int lambda, int k,
                                std::uint64_t budget = default_point_budget(), unsigned threads = 0) {
  detail::require_sum_inputs(f, p, lambda);
  if (k < 1) throw InvalidInput("k must be positive");
  const auto total = torus_size(p, k, f.n(), budget);
  if (!total) require_within_budget(f, p, k, budget);

  const ExtensionField F(p, k);
  const std::uint64_t N = F.order() - 1;
  const LinearTrace tr(F);
  const FieldElement g = primitive_element(F);
  std::vector<std::uint32_t> table(N);
  FieldElement power = F.constant(1);
  for (std::uint64_t e = 0; e < N; ++e) {
    table[e] = static_cast<std::uint32_t>(tr(power));
    power = F.mul(power, g);
  }
  ensure(power == F.constant(1), "primitive element has the wrong order");

  const std::uint64_t outer = f.n() == 1 ? 1 : N;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (*total < 200'000) threads = 1;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, outer));

  std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(static_cast<std::size_t>(p), 0));
  auto work = [&](unsigned t) {
    const std::uint64_t lo = outer * t / threads, hi = outer * (t + 1) / threads;
    detail::count_range(f, p, lambda, table, lo, hi, partial[t]);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }

  TraceCounts out{k, std::vector<std::uint64_t>(static_cast<std::size_t>(p), 0)};
  for (const auto& part : partial)
    for (std::size_t c = 0; c < part.size(); ++c) out.counts[c] += part[c];
  std::uint64_t sum = 0;
  for (auto c : out.counts) sum += c;
  ensure(sum == *total, "trace counts do not cover the torus");
  return out;
}

/// S_k = sum over the torus of zeta_p^{Tr f(x)}.
inline CyclotomicInteger exponential_sum(const KloostermanFamily& f, Int p, Int lambda, int k,
                                         std::uint64_t budget = default_point_budget()) {
  return CyclotomicInteger::from_counts(p, trace_counts(f, p, lambda, k, budget).counts);
}

/// L(T)^{(-1)^{n-1}} = A_0 + A_1 T + ... + A_D T^D.
struct LPolynomial {
  Int p;
  int sign_exponent;  // (-1)^{n-1}
  std::vector<CyclotomicInteger> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

namespace detail {
inline BigInt power_sum_sign(std::size_t n) { return n % 2 == 0 ? BigInt(1) : BigInt(-1); }
}  // namespace detail

/// A_1..A_D from S_1..S_D with p_k = (-1)^n S_k and m A_m = -sum_{i<=m} p_i A_{m-i}.
inline LPolynomial newton_identities(const std::vector<CyclotomicInteger>& sums, std::size_t n) {
  if (sums.empty()) throw InvalidInput("need at least S_1");
  const Int p = sums.front().p();
  const BigInt sign = detail::power_sum_sign(n);
  std::vector<CyclotomicInteger> power_sums;
  for (const auto& s : sums) power_sums.push_back(s * sign);

  LPolynomial L{p, n % 2 == 1 ? 1 : -1, {CyclotomicInteger::constant(p, 1)}};
  for (std::size_t m = 1; m <= sums.size(); ++m) {
    CyclotomicInteger acc(p);
    for (std::size_t i = 1; i <= m; ++i) acc += power_sums[i - 1] * L.coeffs[m - i];
    auto a_m = (-acc).divide_exact(static_cast<Int>(m));
    if (!a_m) throw InvariantViolation("L-polynomial coefficient A_" + std::to_string(m) + " is not integral");
    L.coeffs.push_back(std::move(*a_m));
  }
  return L;
}

/// S_{D+1} forced by A_1..A_D (A_{D+1} = 0) and S_1..S_D.
inline CyclotomicInteger predict_next_sum(const LPolynomial& L, const std::vector<CyclotomicInteger>& sums,
                                          std::size_t n) {
  const std::size_t D = static_cast<std::size_t>(L.degree());
  if (sums.size() != D) throw InvalidInput("need exactly S_1..S_D");
  const BigInt sign = detail::power_sum_sign(n);
  CyclotomicInteger next(L.p);
  for (std::size_t i = 1; i <= D; ++i) next -= L.coeffs[i] * (sums[D - i] * sign);
  return next * sign;
}

struct BruteForceResult {
  Int p;
  Int lambda;
  std::vector<CyclotomicInteger> sums;  // S_1..S_D
  LPolynomial lpoly;
  std::vector<ValuationPoint> valuations;
  Polygon newton;
};

inline std::vector<ValuationPoint> coefficient_valuations(const LPolynomial& L) {
  std::vector<ValuationPoint> out;
  for (std::size_t m = 0; m < L.coeffs.size(); ++m)
    out.push_back({static_cast<Int>(m), pi_adic_valuation(L.coeffs[m])});
  return out;
}

inline BruteForceResult newton_polygon_bruteforce(const KloostermanFamily& f, Int p, Int lambda,
                                                  std::uint64_t budget = default_point_budget()) {
  detail::require_sum_inputs(f, p, lambda);
  const Int D = basis_cardinality_formula(f);
  require_within_budget(f, p, static_cast<int>(D), budget);

  BruteForceResult r{p, mod(lambda, p), {}, {}, {}, {}};
  for (int k = 1; k <= D; ++k) r.sums.push_back(exponential_sum(f, p, lambda, k, budget));
  r.lpoly = newton_identities(r.sums, f.n());
  r.valuations = coefficient_valuations(r.lpoly);
  if (!r.valuations.back().valuation)
    throw InvariantViolation("top coefficient of the L-polynomial vanishes for " + describe(f));
  r.newton = newton_polygon(r.valuations);
  return r;
}

/// Brute-force S_{D+1} agrees with the value forced by the degree-D L-polynomial.
inline bool consistency_check_extra_sum(const KloostermanFamily& f, Int p, Int lambda,
                                        std::uint64_t budget = default_point_budget()) {
  detail::require_sum_inputs(f, p, lambda);
  const Int D = basis_cardinality_formula(f);
  require_within_budget(f, p, static_cast<int>(D + 1), budget);
  std::vector<CyclotomicInteger> sums;
  for (int k = 1; k <= D; ++k) sums.push_back(exponential_sum(f, p, lambda, k, budget));
  const LPolynomial L = newton_identities(sums, f.n());
  return predict_next_sum(L, sums, f.n()) == exponential_sum(f, p, lambda, static_cast<int>(D + 1), budget);
}

}  // namespace kloo
