#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "kloo/lattice.hpp"
#include "oracles/weight_oracle.hpp"

using namespace kloo;

namespace {

std::vector<Rational> weights_of(const BasisSet& b) {
  std::vector<Rational> out;
  for (const auto& w : b.weights) out.push_back(w.value);
  return out;
}

std::set<std::size_t> cones(const KloostermanFamily& f, const LatticePoint& v) {
  const auto idx = cone_membership(f, v).indices();
  return {idx.begin(), idx.end()};
}

// Every point of the cube [-r, r]^n.
std::vector<LatticePoint> cube(std::size_t n, Int r) {
  std::vector<LatticePoint> out;
  LatticePoint v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = -r;
  for (;;) {
    out.push_back(v);
    std::size_t i = 0;
    while (i < n && v[i] == r) v[i++] = -r;
    if (i == n) break;
    ++v[i];
  }
  return out;
}

const std::vector<KloostermanFamily>& property_families() {
  static const std::vector<KloostermanFamily> fams{
      {{1}, {1}},       {{3}, {2}},       {{4}, {6}},          {{1, 1}, {1, 1}},      {{1, 2}, {1, 1}},
      {{1, 1}, {1, 2}}, {{2, 3}, {1, 1}}, {{3, 2}, {2, 5}},    {{4, 6}, {3, 2}},      {{1, 2, 3}, {1, 1, 1}},
      {{2, 2, 3}, {1, 2, 3}}};
  return fams;
}

}  // namespace

TEST(Family, RejectsBadExponents) {
  EXPECT_THROW(KloostermanFamily({0, 1}, {1, 1}), InvalidInput);
  EXPECT_THROW(KloostermanFamily({1, 1}, {1, -2}), InvalidInput);
  EXPECT_THROW(KloostermanFamily({1, 1}, {1}), InvalidInput);
  EXPECT_THROW(KloostermanFamily({}, {}), InvalidInput);
}

TEST(EStar, Examples) {
  EXPECT_EQ(e_star({{1}, {1}}), 1);
  EXPECT_EQ(e_star({{1, 2}, {1, 1}}), 2);
  EXPECT_EQ(e_star({{2, 3}, {1, 1}}), 6);
  EXPECT_EQ(e_star({{4}, {6}}), 12);
  EXPECT_EQ(e_star({{2, 4}, {3, 6}}), 24);
}

TEST(Cones, Examples) {
  EXPECT_EQ(cones({{1, 1}, {1, 1}}, {0, 0}), (std::set<std::size_t>{0, 1, 2}));
  EXPECT_EQ(cones({{1, 2}, {1, 1}}, {-1, -1}), (std::set<std::size_t>{1, 2}));
  EXPECT_EQ(cones({{1, 1}, {1, 2}}, {0, -1}), (std::set<std::size_t>{2}));
}

TEST(Cones, CoverTheLattice) {
  for (const auto& f : property_families())
    for (const auto& v : cube(f.n(), f.n() == 3 ? 4 : 8)) EXPECT_GT(cone_membership(f, v).size(), 0u) << v;
}

TEST(Weight, Examples) {
  EXPECT_EQ(weight({{1, 2}, {1, 1}}, {1, 2}).value, Rational(2));
  EXPECT_EQ(weight({{1, 2}, {1, 1}}, {-1, -1}).value, Rational(1));
  EXPECT_EQ(weight({{1, 1}, {1, 2}}, {0, -1}).value, Rational(1));
  for (const auto& f : property_families()) EXPECT_EQ(weight(f, LatticePoint(f.n())).value, Rational(0));
}

TEST(Weight, OneVariableBranch) {
  const KloostermanFamily f({3}, {2});
  EXPECT_EQ(weight(f, {2}).value, Rational(2, 3));
  EXPECT_EQ(weight(f, {-3}).value, Rational(3, 2));
  EXPECT_EQ(weight(f, {7}).value, Rational(7, 3));
}

TEST(Weight, SupportVerticesHaveWeightOne) {
  for (const auto& f : property_families()) {
    for (const auto& s : support(f)) EXPECT_EQ(weight(f, s).value, Rational(1)) << describe(f) << " " << s;
  }
}

TEST(Weight, Homogeneity) {
  for (const auto& f : property_families()) {
    const WeightEvaluator we(f);
    for (const auto& v : cube(f.n(), f.n() == 3 ? 4 : 10))
      for (Int l = 2; l <= 4; ++l) ASSERT_EQ(we.weight(l * v).value, l * we.weight(v).value) << describe(f) << v;
  }
}

TEST(Weight, SuperadditiveWithEqualityExactlyWhenCofacial) {
  for (const auto& f : property_families()) {
    if (f.n() == 3) continue;
    const WeightEvaluator we(f);
    const auto pts = cube(f.n(), 5);
    for (const auto& u : pts)
      for (const auto& v : pts) {
        const Rational lhs = we.weight(u + v).value, rhs = we.weight(u).value + we.weight(v).value;
        ASSERT_LE(lhs, rhs) << describe(f) << u << v;
        ASSERT_EQ(lhs == rhs, cofacial(f, u, v)) << describe(f) << u << v;
      }
  }
}

TEST(Weight, SuperadditivityThreeVariables) {
  for (const auto& f : property_families()) {
    if (f.n() != 3) continue;
    const WeightEvaluator we(f);
    const auto pts = cube(3, 2);
    for (const auto& u : pts)
      for (const auto& v : pts) {
        const Rational lhs = we.weight(u + v).value, rhs = we.weight(u).value + we.weight(v).value;
        ASSERT_LE(lhs, rhs);
        ASSERT_EQ(lhs == rhs, cofacial(f, u, v)) << describe(f) << u << v;
      }
  }
}

TEST(Weight, DenominatorDividesEStar) {
  for (const auto& f : property_families()) {
    const Int es = e_star(f);
    for (const auto& v : cube(f.n(), f.n() == 3 ? 6 : 20))
      ASSERT_EQ(es % weight(f, v).value.denominator(), 0) << describe(f) << v;
  }
}

TEST(Weight, AgreesWithLinearProgram) {
  for (const auto& f : property_families()) {
    const WeightEvaluator we(f);
    for (const auto& v : cube(f.n(), f.n() == 3 ? 3 : 6))
      ASSERT_EQ(we.weight(v).value, oracle::lp_weight(f, v)) << describe(f) << v;
  }
}

TEST(Cofacial, Examples) {
  const KloostermanFamily f({1, 1}, {1, 1});
  EXPECT_TRUE(cofacial(f, {1, 0}, {0, 1}));
  EXPECT_FALSE(cofacial(f, {2, 1}, {-1, -1}));
  // (2,0) sits on the ray through A_1, which is shared by Delta_0 and Delta_2.
  EXPECT_EQ(cones(f, {2, 0}), (std::set<std::size_t>{0, 2}));
  EXPECT_TRUE(cofacial(f, {2, 0}, {-1, -1}));
  EXPECT_EQ(weight(f, {1, -1}).value, weight(f, {2, 0}).value + weight(f, {-1, -1}).value);
  EXPECT_TRUE(cofacial(f, {0, -1}, {-1, -1}));
  EXPECT_TRUE(cofacial(f, {0, 0}, {5, -7}));
}

// Within its cone, a point with u_i = 0 (cone 0) or on a ridge u_j/d_j = u_i/d_i < 0
// (cone i) meets every support vertex.
TEST(Cofacial, BoundaryPointsMeetEverySupportVertex) {
  for (const auto& f : property_families()) {
    const std::size_t n = f.n();
    for (const auto& u : cube(n, n == 3 ? 4 : 8)) {
      bool boundary = false;
      if (in_cone(f, u, 0))
        for (std::size_t i = 0; i < n; ++i) boundary = boundary || u[i] == 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (u[i] >= 0 || !in_cone(f, u, i + 1)) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (j != i && u[j] * f.d(i) == f.d(j) * u[i]) boundary = true;
      }
      if (!boundary) continue;
      for (const auto& s : support(f)) ASSERT_TRUE(cofacial(f, u, s)) << describe(f) << u << s;
    }
  }
}

// Without the cone context the coordinate test alone is not enough.
TEST(Cofacial, ZeroCoordinateAloneIsNotSufficient) {
  const KloostermanFamily f({1, 1}, {1, 1});
  const LatticePoint u{0, -3};
  EXPECT_EQ(cones(f, u), (std::set<std::size_t>{2}));
  EXPECT_FALSE(cofacial(f, u, support_vertex(f, 1)));
}

TEST(Basis, Examples) {
  {
    const auto b = enumerate_basis({{1, 1}, {1, 1}});
    EXPECT_EQ(b.points, (std::vector<LatticePoint>{{0, 0}, {1, 0}, {1, 1}}));
    EXPECT_EQ(weights_of(b), (std::vector<Rational>{0, 1, 2}));
  }
  {
    const auto b = enumerate_basis({{1, 2}, {1, 1}});
    EXPECT_EQ(b.points, (std::vector<LatticePoint>{{0, 0}, {0, 1}, {1, 0}, {1, 1}, {1, 2}}));
    EXPECT_EQ(weights_of(b), (std::vector<Rational>{0, Rational(1, 2), 1, Rational(3, 2), 2}));
  }
  {
    const auto b = enumerate_basis({{1, 1}, {1, 2}});
    EXPECT_EQ(b.points, (std::vector<LatticePoint>{{0, -1}, {0, 0}, {1, 0}, {1, 1}}));
    EXPECT_EQ(weights_of(b), (std::vector<Rational>{1, 0, 1, 2}));
  }
}

TEST(Basis, CardinalityFormulaExamples) {
  EXPECT_EQ(basis_cardinality_formula({{1, 1}, {1, 1}}), 3);
  EXPECT_EQ(basis_cardinality_formula({{2, 3}, {1, 1}}), 11);
  EXPECT_EQ(basis_cardinality_formula({{1}, {1}}), 2);
  EXPECT_EQ(basis_cardinality_formula({{4}, {6}}), 10);
}

// Rational-arithmetic reading of the box and pair inequalities.
TEST(Basis, MatchesDirectEnumeration) {
  for (const auto& f : property_families()) {
    const std::size_t n = f.n();
    std::vector<LatticePoint> expected;
    Int r = 0;
    for (std::size_t i = 0; i < n; ++i) r = std::max({r, f.a(i), f.d(i)});
    for (const auto& v : cube(n, r)) {
      bool ok = true;
      for (std::size_t i = 0; i < n; ++i) ok = ok && -f.d(i) < v[i] && v[i] <= f.a(i);
      for (std::size_t i = 0; i < n && ok; ++i)
        for (std::size_t j = i + 1; j < n && ok; ++j) {
          const Rational ratio(f.d(j), f.d(i));
          ok = ratio * (v[i] - f.a(i)) <= Rational(v[j]) && Rational(v[j]) < ratio * v[i] + f.a(j);
        }
      if (ok) expected.push_back(v);
    }
    std::sort(expected.begin(), expected.end());
    const auto b = enumerate_basis(f);
    EXPECT_EQ(b.points, expected) << describe(f);
    EXPECT_TRUE(std::is_sorted(b.points.begin(), b.points.end()));
  }
}

TEST(CountingSets, Examples) {
  const KloostermanFamily f({1, 1}, {1, 2});
  EXPECT_EQ(enumerate_S(f), (std::vector<LatticePoint>{{1, -1}}));
  EXPECT_EQ(enumerate_T(f), (std::vector<LatticePoint>{{0, 0}}));
  EXPECT_TRUE(enumerate_S({{1, 2}, {1, 1}}).empty());
  EXPECT_THROW(enumerate_T({{2}, {1}}), InvalidInput);
}

TEST(CountingSets, DecompositionsAndMSize) {
  const std::vector<KloostermanFamily> fams{{{1, 1}, {1, 2}}, {{2, 3}, {1, 1}}, {{3, 2}, {2, 3}},
                                            {{2, 1, 3}, {1, 3, 2}}, {{2, 2, 2}, {2, 1, 3}}};
  for (const auto& f : fams) {
    const std::size_t n = f.n();
    auto as_set = [](const std::vector<LatticePoint>& v) { return std::set<LatticePoint>(v.begin(), v.end()); };
    const auto A0 = as_set(enumerate_A0(f)), Tb = as_set(enumerate_T_bar(f)), S = as_set(enumerate_S(f));
    const auto M = as_set(enumerate_M(f)), T = as_set(enumerate_T(f));

    std::set<LatticePoint> both;
    std::set_intersection(Tb.begin(), Tb.end(), S.begin(), S.end(), std::inserter(both, both.end()));
    EXPECT_TRUE(both.empty()) << describe(f);
    std::set<LatticePoint> joined(Tb);
    joined.insert(S.begin(), S.end());
    EXPECT_EQ(joined, A0) << describe(f);

    both.clear();
    std::set_intersection(T.begin(), T.end(), Tb.begin(), Tb.end(), std::inserter(both, both.end()));
    EXPECT_TRUE(both.empty()) << describe(f);
    joined = T;
    joined.insert(Tb.begin(), Tb.end());
    EXPECT_EQ(joined, M) << describe(f);

    EXPECT_EQ(A0.size(), M.size()) << describe(f);
    Int m_size = 0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      Int term = f.d(j);
      for (std::size_t i = 0; i + 1 < n; ++i)
        if (i != j) term *= f.a(i);
      m_size += term;
    }
    EXPECT_EQ(static_cast<Int>(M.size()), f.d(n - 1) * m_size) << describe(f);
  }
}

TEST(Bijections, Examples) {
  const KloostermanFamily f({1, 1}, {1, 2});
  EXPECT_EQ(psi(f, {0, 0}), (LatticePoint{1, -1}));
  EXPECT_EQ(phi(f, {1, -1}), (LatticePoint{0, 0}));
  EXPECT_THROW(psi(f, {1, -1}), InvalidInput);
  EXPECT_THROW(phi(f, {0, 0}), InvalidInput);
}

TEST(Bijections, MutuallyInverse) {
  const std::vector<KloostermanFamily> fams{{{1, 1}, {1, 2}}, {{2, 3}, {3, 1}}, {{3, 2}, {2, 3}},
                                            {{2, 1, 3}, {1, 3, 2}}, {{3, 3, 2}, {2, 1, 3}}};
  for (const auto& f : fams) {
    for (const auto& v : enumerate_T(f)) {
      const auto u = psi(f, v);
      ASSERT_TRUE(in_S(f, u)) << describe(f) << v;
      ASSERT_EQ(phi(f, u), v) << describe(f) << v;
    }
    for (const auto& u : enumerate_S(f)) {
      const auto v = phi(f, u);
      ASSERT_TRUE(in_T(f, v)) << describe(f) << u;
      ASSERT_EQ(psi(f, v), u) << describe(f) << u;
    }
    EXPECT_EQ(enumerate_T(f).size(), enumerate_S(f).size());
  }
}
