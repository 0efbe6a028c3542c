#pragma once

// Exact lower-convex polygons: Hodge polygons from weight multisets and
// Newton polygons from valuation data.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "kloo/error.hpp"
#include "kloo/lattice.hpp"
#include "kloo/rational.hpp"

namespace kloo {

struct PolygonVertex {
  Rational x;
  Rational y;

  friend bool operator==(const PolygonVertex&, const PolygonVertex&) = default;
};

/// Ascending slopes with multiplicities.
struct SlopeSequence {
  std::vector<std::pair<Rational, Int>> slopes;

  Int degree() const {
    Int total = 0;
    for (const auto& [s, m] : slopes) total += m;
    return total;
  }

  /// Flat list with each slope repeated by its multiplicity.
  std::vector<Rational> expanded() const {
    std::vector<Rational> out;
    for (const auto& [s, m] : slopes) out.insert(out.end(), static_cast<std::size_t>(m), s);
    return out;
  }

  friend bool operator==(const SlopeSequence&, const SlopeSequence&) = default;
};

/// Starts at (0,0); x strictly increasing; segment slopes strictly increasing.
class Polygon {
 public:
  Polygon() : vertices_{{Rational(0), Rational(0)}} {}

  /// Unit-width segments with the given slopes, sorted ascending and merged.
  static Polygon from_slopes(std::vector<Rational> slopes) {
    std::sort(slopes.begin(), slopes.end());
    Polygon poly;
    for (const auto& s : slopes) {
      const PolygonVertex& last = poly.vertices_.back();
      poly.vertices_.push_back({last.x + 1, last.y + s});
    }
    poly.merge_collinear();
    return poly;
  }

  static Polygon from_vertices(std::vector<PolygonVertex> vs) {
    if (vs.empty() || vs.front().x != Rational(0) || vs.front().y != Rational(0)) throw InvalidInput("polygon must start at (0,0)");
    for (std::size_t i = 1; i < vs.size(); ++i)
      if (vs[i].x <= vs[i - 1].x) throw InvalidInput("polygon abscissae must strictly increase");
    Polygon poly;
    poly.vertices_ = std::move(vs);
    poly.merge_collinear();
    for (std::size_t i = 2; i < poly.vertices_.size(); ++i)
      if (poly.segment_slope(i - 1) <= poly.segment_slope(i - 2)) throw InvalidInput("polygon is not lower convex");
    return poly;
  }

  const std::vector<PolygonVertex>& vertices() const { return vertices_; }
  Rational extent() const { return vertices_.back().x; }

  SlopeSequence slopes() const {
    SlopeSequence seq;
    for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
      const Rational width = vertices_[i + 1].x - vertices_[i].x;
      ensure(width.denominator() == 1, "segment width is not an integer");
      seq.slopes.emplace_back(segment_slope(i), width.numerator());
    }
    return seq;
  }

  /// Height of the chain at abscissa x in [0, extent].
  Rational value_at(const Rational& x) const {
    if (x < Rational(0) || x > extent()) throw InvalidInput("abscissa outside the polygon");
    for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
      const auto& a = vertices_[i];
      const auto& b = vertices_[i + 1];
      if (x <= b.x) return a.y + (x - a.x) * segment_slope(i);
    }
    return vertices_.back().y;
  }

  friend bool operator==(const Polygon&, const Polygon&) = default;

 private:
  Rational segment_slope(std::size_t i) const {
    return (vertices_[i + 1].y - vertices_[i].y) / (vertices_[i + 1].x - vertices_[i].x);
  }

  void merge_collinear() {
    std::vector<PolygonVertex> out;
    for (const auto& v : vertices_) {
      while (out.size() >= 2) {
        const auto& a = out[out.size() - 2];
        const auto& b = out.back();
        if ((b.y - a.y) * (v.x - a.x) != (v.y - a.y) * (b.x - a.x)) break;
        out.pop_back();
      }
      out.push_back(v);
    }
    vertices_ = std::move(out);
  }

  std::vector<PolygonVertex> vertices_;
};

inline Polygon hodge_polygon(const BasisSet& basis) {
  if (basis.weights.empty()) throw InvalidInput("empty basis");
  std::vector<Rational> slopes;
  slopes.reserve(basis.weights.size());
  for (const auto& w : basis.weights) slopes.push_back(w.value);
  return Polygon::from_slopes(std::move(slopes));
}

/// (m, ord_q A_m); an empty valuation marks A_m = 0.
struct ValuationPoint {
  Int index;
  std::optional<Rational> valuation;
};

/// Lower convex hull of the finite points (monotone chain, exact cross products).
inline Polygon newton_polygon(std::vector<ValuationPoint> points) {
  std::sort(points.begin(), points.end(), [](const auto& l, const auto& r) { return l.index < r.index; });
  if (points.empty() || points.front().index != 0) throw InvalidInput("Newton polygon needs the m = 0 coefficient");
  if (!points.front().valuation || *points.front().valuation != Rational(0))
    throw InvalidInput("the constant coefficient must have valuation 0");
  if (!points.back().valuation) throw InvalidInput("the top coefficient must be nonzero");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i].index == points[i - 1].index) throw InvalidInput("duplicate coefficient index");

  std::vector<PolygonVertex> hull;
  for (const auto& pt : points) {
    if (!pt.valuation) continue;
    const PolygonVertex c{Rational(pt.index), *pt.valuation};
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const Rational cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
      if (cross > Rational(0)) break;
      hull.pop_back();
    }
    hull.push_back(c);
  }
  return Polygon::from_vertices(std::move(hull));
}

enum class Comparison { equal, np_strictly_above, incomparable_violation };

inline std::string to_string(Comparison c) {
  switch (c) {
    case Comparison::equal: return "equal";
    case Comparison::np_strictly_above: return "np_strictly_above";
    case Comparison::incomparable_violation: return "incomparable_violation";
  }
  return "unknown";
}

/// Pointwise comparison at every integer abscissa.
inline Comparison compare(const Polygon& np, const Polygon& hp) {
  if (np.extent() != hp.extent()) throw InvalidInput("polygons have different horizontal extents");
  const Rational end = np.extent();
  ensure(end.denominator() == 1, "polygon extent is not an integer");
  bool strict = false;
  for (Int x = 0; x <= end.numerator(); ++x) {
    const Rational a = np.value_at(x), b = hp.value_at(x);
    if (a < b) return Comparison::incomparable_violation;
    if (a > b) strict = true;
  }
  return strict ? Comparison::np_strictly_above : Comparison::equal;
}

// JSON: {"vertices": [[[num,den],[num,den]], ...], "slopes": [[num,den,mult], ...]}

inline nlohmann::json rational_to_json(const Rational& r) { return nlohmann::json::array({r.numerator(), r.denominator()}); }

inline Rational rational_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw InvalidInput("rational must be [numerator, denominator]");
  const Int den = j[1].get<Int>();
  if (den <= 0) throw InvalidInput("rational denominator must be positive");
  return Rational(j[0].get<Int>(), den);
}

inline nlohmann::json to_json(const SlopeSequence& s) {
  auto out = nlohmann::json::array();
  for (const auto& [slope, mult] : s.slopes) out.push_back({slope.numerator(), slope.denominator(), mult});
  return out;
}

inline nlohmann::json to_json(const Polygon& p) {
  auto verts = nlohmann::json::array();
  for (const auto& v : p.vertices()) verts.push_back({rational_to_json(v.x), rational_to_json(v.y)});
  return {{"vertices", verts}, {"slopes", to_json(p.slopes())}};
}

inline Polygon polygon_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("vertices")) throw InvalidInput("polygon JSON needs a vertices array");
  std::vector<PolygonVertex> vs;
  for (const auto& v : j.at("vertices")) {
    if (!v.is_array() || v.size() != 2) throw InvalidInput("vertex must be a pair of rationals");
    vs.push_back({rational_from_json(v[0]), rational_from_json(v[1])});
  }
  Polygon p = Polygon::from_vertices(std::move(vs));
  if (j.contains("slopes") && to_json(p.slopes()) != j.at("slopes"))
    throw InvalidInput("polygon slopes do not match its vertices");
  return p;
}

inline std::string format_slopes(const SlopeSequence& s) {
  std::string out;
  for (const auto& r : s.expanded()) out += (out.empty() ? "" : ",") + to_string(r);
  return out;
}

}  // namespace kloo
