#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "gson/costmap.hpp"
#include "gson/params.hpp"
#include "gson/types.hpp"

namespace gson {

/// Convex polygon, vertices counter-clockwise, no collinear triples.
/// Degenerate inputs yield 1 (point) or 2 (segment endpoints) vertices.
struct ConvexHull {
  std::vector<Vec2> vertices;

  bool degenerate() const { return vertices.size() < 3; }
};

/// Andrew monotone chain with strict turns; collinear and duplicate points are
/// dropped. Throws on empty input.
inline ConvexHull convex_hull(std::vector<Vec2> points) {
  if (points.empty()) throw std::invalid_argument("convex_hull: empty input");
  std::sort(points.begin(), points.end(), [](const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  points.erase(std::unique(points.begin(), points.end(),
                           [](const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }),
               points.end());
  const std::size_t n = points.size();
  if (n <= 2) return ConvexHull{points};

  auto cross3 = [](const Vec2& o, const Vec2& a, const Vec2& b) {
    return (a - o).cross(b - o);
  };
  std::vector<Vec2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && cross3(hull[k - 2], hull[k - 1], points[i]) <= 0.0) --k;
    hull[k++] = points[i];
  }
  for (std::size_t i = n - 1, lower = k + 1; i-- > 0;) {  // upper chain
    while (k >= lower && cross3(hull[k - 2], hull[k - 1], points[i]) <= 0.0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) return ConvexHull{{points.front(), points.back()}};  // all collinear
  return ConvexHull{hull};
}

/// Boundary-inclusive containment; degenerate hulls (point/segment) have zero
/// area and contain nothing under floating-point queries.
inline bool hull_contains(const ConvexHull& hull, const Vec2& p) {
  const auto& v = hull.vertices;
  if (v.size() < 3) return false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % v.size()];
    if ((b - a).cross(p - a) < 0.0) return false;  // CCW: inside is left of every edge
  }
  return true;
}

struct Ellipse {
  Vec2 center;
  double semi_major = 0.0;  // a >= b > 0
  double semi_minor = 0.0;
  double orientation = 0.0;  // rad, major-axis direction

  bool contains(const Vec2& p) const {
    const double c = std::cos(orientation), s = std::sin(orientation);
    const Vec2 d = p - center;
    const double u = (d.x * c + d.y * s) / semi_major;
    const double w = (-d.x * s + d.y * c) / semi_minor;
    return u * u + w * w <= 1.0;
  }
};

/// One ellipse per hull edge: centered on the edge midpoint, aligned with it,
/// a = |edge|/2 + margin, b = margin. A single point becomes a circle of
/// radius margin; a segment gets one ellipse spanning it. Every boundary point
/// of the hull lies inside the union.
inline std::vector<Ellipse> ellipses_enclose(const ConvexHull& hull, double margin) {
  if (margin <= 0.0) throw std::invalid_argument("ellipses_enclose: margin must be positive");
  const auto& v = hull.vertices;
  std::vector<Ellipse> out;
  if (v.empty()) return out;
  if (v.size() == 1) {
    out.push_back({v[0], margin, margin, 0.0});
    return out;
  }
  const std::size_t edges = (v.size() == 2) ? 1 : v.size();
  for (std::size_t i = 0; i < edges; ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % v.size()];
    const Vec2 mid = (a + b) * 0.5;
    const double len = distance(a, b);
    out.push_back({mid, 0.5 * len + margin, margin, std::atan2(b.y - a.y, b.x - a.x)});
  }
  return out;
}

/// The planar region claimed by one group: hull interior plus the edge
/// ellipses that inflate its boundary.
struct SocialSpace {
  ConvexHull hull;
  std::vector<Ellipse> ellipses;
  double margin = 0.5;
};

inline SocialSpace make_social_space(const std::vector<Vec2>& member_positions, double margin) {
  SocialSpace space;
  space.margin = margin;
  space.hull = convex_hull(member_positions);
  space.ellipses = ellipses_enclose(space.hull, margin);
  return space;
}

inline bool point_in_region(const Vec2& p, const SocialSpace& space) {
  if (hull_contains(space.hull, p)) return true;
  for (const auto& e : space.ellipses)
    if (e.contains(p)) return true;
  return false;
}

inline bool point_in_any_region(const Vec2& p, const std::vector<SocialSpace>& spaces) {
  for (const auto& s : spaces)
    if (point_in_region(p, s)) return true;
  return false;
}

namespace detail {

struct Bounds {
  double min_x, min_y, max_x, max_y;
};

inline Bounds region_bounds(const SocialSpace& space) {
  Bounds b{1e300, 1e300, -1e300, -1e300};
  auto grow = [&b](double x, double y) {
    b.min_x = std::min(b.min_x, x);
    b.min_y = std::min(b.min_y, y);
    b.max_x = std::max(b.max_x, x);
    b.max_y = std::max(b.max_y, y);
  };
  for (const auto& v : space.hull.vertices) grow(v.x, v.y);
  for (const auto& e : space.ellipses) {
    const double c = std::cos(e.orientation), s = std::sin(e.orientation);
    const double ex = std::sqrt(e.semi_major * e.semi_major * c * c +
                                e.semi_minor * e.semi_minor * s * s);
    const double ey = std::sqrt(e.semi_major * e.semi_major * s * s +
                                e.semi_minor * e.semi_minor * c * c);
    grow(e.center.x - ex, e.center.y - ey);
    grow(e.center.x + ex, e.center.y + ey);
  }
  return b;
}

}  // namespace detail

/// Copies the base map and raises every cell whose center lies in any group's
/// region to at least the social cost; lethal cells stay lethal.
inline CostMap update_costmap(const std::vector<SocialSpace>& spaces, const CostMap& base) {
  CostMap out = base;
  for (const auto& space : spaces) {
    const auto b = detail::region_bounds(space);
    const double res = base.resolution();
    const int ix0 = std::max(0, static_cast<int>(std::floor((b.min_x - base.origin().x) / res)) - 1);
    const int iy0 = std::max(0, static_cast<int>(std::floor((b.min_y - base.origin().y) / res)) - 1);
    const int ix1 = std::min(base.width() - 1,
                             static_cast<int>(std::floor((b.max_x - base.origin().x) / res)) + 1);
    const int iy1 = std::min(base.height() - 1,
                             static_cast<int>(std::floor((b.max_y - base.origin().y) / res)) + 1);
    for (int iy = iy0; iy <= iy1; ++iy)
      for (int ix = ix0; ix <= ix1; ++ix) {
        const GridIndex c{ix, iy};
        if (point_in_region(out.grid_to_world(c), space))
          out.set(c, std::max(out.at(c), cost::kSocial));
      }
  }
  return out;
}

/// Distance from p to the closed region bounded by the hull: positive outside,
/// negative penetration depth inside a 2D hull. Degenerate hulls (point or
/// segment) have no interior, so their distance is never negative.
inline double hull_signed_distance(const ConvexHull& hull, const Vec2& p) {
  const auto& v = hull.vertices;
  if (v.empty()) return std::numeric_limits<double>::infinity();
  if (v.size() == 1) return distance(p, v[0]);

  auto segment_distance = [](const Vec2& a, const Vec2& b, const Vec2& q) {
    const Vec2 ab = b - a;
    const double denom = ab.squared_norm();
    const double t = denom > 0.0 ? std::clamp((q - a).dot(ab) / denom, 0.0, 1.0) : 0.0;
    return distance(q, a + ab * t);
  };

  double boundary = std::numeric_limits<double>::infinity();
  const std::size_t edges = (v.size() == 2) ? 1 : v.size();
  for (std::size_t i = 0; i < edges; ++i)
    boundary = std::min(boundary, segment_distance(v[i], v[(i + 1) % v.size()], p));
  return hull_contains(hull, p) ? -boundary : boundary;
}

}  // namespace gson
