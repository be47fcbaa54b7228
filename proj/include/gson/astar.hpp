#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "gson/costmap.hpp"
#include "gson/params.hpp"
#include "gson/types.hpp"

namespace gson {

/// Geometric path in world coordinates plus its traversal cost (Euclidean
/// length weighted by the cell costs crossed).
struct Path {
  std::vector<Vec2> waypoints;
  double cost = 0.0;

  bool empty() const { return waypoints.empty(); }

  double length() const {
    double len = 0.0;
    for (std::size_t i = 1; i < waypoints.size(); ++i)
      len += distance(waypoints[i - 1], waypoints[i]);
    return len;
  }
};

namespace detail {

/// Cell-cost multiplier applied to step length.
inline double cost_multiplier(std::uint8_t c) { return 1.0 + static_cast<double>(c) / 128.0; }

inline double octile(GridIndex a, GridIndex b, double res) {
  const double dx = std::abs(a.ix - b.ix), dy = std::abs(a.iy - b.iy);
  return res * (std::max(dx, dy) + (std::numbers::sqrt2 - 1.0) * std::min(dx, dy));
}

struct SearchResult {
  std::vector<GridIndex> cells;
  double cost = 0.0;
};

/// 8-connected grid search; A* when `heuristic` is true, Dijkstra otherwise.
/// Edge cost = step length * (1 + cost(destination)/128); cells >= 253 are
/// impassable. Ties in f are broken toward the smaller heuristic.
inline SearchResult grid_search(const CostMap& map, GridIndex start, GridIndex goal,
                                bool heuristic) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const int w = map.width(), h = map.height();
  const auto id = [w](GridIndex c) { return static_cast<std::size_t>(c.iy) * w + c.ix; };

  if (!map.in_bounds(start) || !map.in_bounds(goal))
    throw PlanningError("grid_search: endpoint outside map");
  if (map.at(start) >= cost::kBlockedMin || map.at(goal) >= cost::kBlockedMin)
    throw PlanningError("grid_search: endpoint blocked");

  std::vector<double> g(static_cast<std::size_t>(w) * h, inf);
  std::vector<int> parent(static_cast<std::size_t>(w) * h, -1);
  struct Entry {
    double f, hh;
    GridIndex c;
    bool operator>(const Entry& o) const { return f > o.f || (f == o.f && hh > o.hh); }
  };
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> open;

  g[id(start)] = 0.0;
  open.push({heuristic ? octile(start, goal, map.resolution()) : 0.0,
             heuristic ? octile(start, goal, map.resolution()) : 0.0, start});
  const int dx8[] = {1, 1, 0, -1, -1, -1, 0, 1};
  const int dy8[] = {0, 1, 1, 1, 0, -1, -1, -1};

  while (!open.empty()) {
    const Entry top = open.top();
    open.pop();
    const GridIndex c = top.c;
    const double hc = heuristic ? octile(c, goal, map.resolution()) : 0.0;
    if (top.f > g[id(c)] + hc + 1e-12) continue;  // stale entry
    if (c == goal) break;
    for (int k = 0; k < 8; ++k) {
      const GridIndex nb{c.ix + dx8[k], c.iy + dy8[k]};
      if (!map.in_bounds(nb)) continue;
      const std::uint8_t cell = map.at(nb);
      if (cell >= cost::kBlockedMin) continue;
      const double step = map.resolution() * ((k % 2 == 0) ? 1.0 : std::numbers::sqrt2);
      const double cand = g[id(c)] + step * cost_multiplier(cell);
      if (cand < g[id(nb)] - 1e-15) {
        g[id(nb)] = cand;
        parent[id(nb)] = static_cast<int>(id(c));
        const double hn = heuristic ? octile(nb, goal, map.resolution()) : 0.0;
        open.push({cand + hn, hn, nb});
      }
    }
  }

  if (!std::isfinite(g[id(goal)])) throw PlanningError("grid_search: goal unreachable");
  SearchResult res;
  res.cost = g[id(goal)];
  GridIndex c = goal;
  while (true) {
    res.cells.push_back(c);
    const int p = parent[id(c)];
    if (p < 0) break;
    c = {static_cast<int>(p % w), static_cast<int>(p / w)};
  }
  std::reverse(res.cells.begin(), res.cells.end());
  return res;
}

/// True when every sample along a-b at half-resolution spacing is traversable.
inline bool segment_free(const CostMap& map, const Vec2& a, const Vec2& b) {
  const double step = 0.5 * map.resolution();
  const double len = distance(a, b);
  const int n = std::max(1, static_cast<int>(std::ceil(len / step)));
  for (int i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    if (map.blocked_at(a + (b - a) * t)) return false;
  }
  return true;
}

/// Weighted cost of a polyline, integrating the cell multiplier at
/// half-resolution spacing.
inline double path_cost(const CostMap& map, const std::vector<Vec2>& pts) {
  double total = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const Vec2 a = pts[i - 1], b = pts[i];
    const double len = distance(a, b);
    if (len <= 0.0) continue;
    const int n = std::max(1, static_cast<int>(std::ceil(len / (0.5 * map.resolution()))));
    for (int k = 0; k < n; ++k) {
      const Vec2 mid = a + (b - a) * ((k + 0.5) / n);
      total += (len / n) * cost_multiplier(map.cost_at(mid));
    }
  }
  return total;
}

}  // namespace detail

/// Greedy line-of-sight shortcutting followed by resampling so that no segment
/// exceeds max_segment.
inline std::vector<Vec2> shortcut_path(const CostMap& map, const std::vector<Vec2>& pts,
                                       double max_segment) {
  std::vector<Vec2> cut;
  if (pts.empty()) return cut;
  std::size_t i = 0;
  cut.push_back(pts[0]);
  while (i + 1 < pts.size()) {
    std::size_t j = pts.size() - 1;
    for (; j > i + 1; --j)
      if (detail::segment_free(map, pts[i], pts[j])) break;
    cut.push_back(pts[j]);
    i = j;
  }
  std::vector<Vec2> out;
  out.push_back(cut[0]);
  for (std::size_t k = 1; k < cut.size(); ++k) {
    const Vec2 a = cut[k - 1], b = cut[k];
    const double len = distance(a, b);
    const int n = std::max(1, static_cast<int>(std::ceil(len / max_segment)));
    for (int s = 1; s <= n; ++s) out.push_back(a + (b - a) * (static_cast<double>(s) / n));
  }
  return out;
}

/// Global reference path: footprint inflation, 8-connected A*, shortcutting.
inline Path plan_global(const Pose2D& start, const Pose2D& goal, const CostMap& map,
                        const GlobalPlannerParams& params) {
  const CostMap inflated = inflate(map, params.robot_radius, params.inflation_decay);
  if (!inflated.contains(start.position()) || !inflated.contains(goal.position()))
    throw PlanningError("plan_global: start or goal outside map");
  const GridIndex s = inflated.world_to_grid(start.position());
  const GridIndex g = inflated.world_to_grid(goal.position());
  if (inflated.at(s) >= cost::kBlockedMin) throw PlanningError("plan_global: start not free");
  if (inflated.at(g) >= cost::kBlockedMin) throw PlanningError("plan_global: goal not free");

  const auto grid = detail::grid_search(inflated, s, g, /*heuristic=*/true);
  std::vector<Vec2> pts;
  pts.push_back(start.position());
  for (const auto& c : grid.cells) pts.push_back(inflated.grid_to_world(c));
  pts.push_back(goal.position());

  Path path;
  path.waypoints = shortcut_path(inflated, pts, params.max_segment);
  path.cost = detail::path_cost(inflated, path.waypoints);
  return path;
}

}  // namespace gson
