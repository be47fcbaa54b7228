#pragma once

#include <algorithm>
#include <limits>
#include <vector>

namespace gson {

/// Exact minimum-cost assignment on a square cost matrix (row-major), via the
/// shortest-augmenting-path form of the Hungarian algorithm with potentials.
/// Returns col_of_row: row i is assigned to column col_of_row[i].
inline std::vector<int> solve_assignment(const std::vector<double>& cost, int n) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  // 1-based internal arrays per the classic formulation.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> col_of_row(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] >= 1) col_of_row[p[j] - 1] = j - 1;
  return col_of_row;
}

struct Assignment {
  std::vector<std::pair<int, int>> pairs;  // (row, col) matched within the gate
  std::vector<int> unmatched_rows;
  std::vector<int> unmatched_cols;
  double total_cost = 0.0;  // sum of matched-pair costs
};

/// One-to-one matching between rows and columns of a distance matrix where
/// pairs farther than `gate` are forbidden. Maximizes the number of matches,
/// then minimizes total matched distance; rows/columns left over are reported
/// unmatched. Implemented by padding to a square matrix with dummy rows and
/// columns: staying unmatched costs `unmatched`, which dominates any in-gate
/// pair, so real matches are always preferred when feasible.
inline Assignment match_within_gate(const std::vector<double>& dist, int rows, int cols,
                                    double gate) {
  Assignment out;
  const int n = rows + cols;
  if (n == 0) return out;
  const double unmatched = std::max(1.0, gate) * 1e5;
  const double forbidden = unmatched * 1e4;
  std::vector<double> cost(static_cast<std::size_t>(n) * n, forbidden);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double d = dist[i * cols + j];
      cost[i * n + j] = (d <= gate) ? d : forbidden;
    }
  for (int i = 0; i < rows; ++i) cost[i * n + (cols + i)] = unmatched;       // row i unmatched
  for (int j = 0; j < cols; ++j) cost[(rows + j) * n + j] = unmatched;       // col j unmatched
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) cost[(rows + j) * n + (cols + i)] = 0.0;  // dummy-dummy

  const auto col_of_row = solve_assignment(cost, n);
  for (int i = 0; i < rows; ++i) {
    const int j = col_of_row[i];
    if (j < cols && dist[i * cols + j] <= gate) {
      out.pairs.emplace_back(i, j);
      out.total_cost += dist[i * cols + j];
    } else {
      out.unmatched_rows.push_back(i);
    }
  }
  std::vector<char> col_taken(cols, false);
  for (const auto& [i, j] : out.pairs) col_taken[j] = true;
  for (int j = 0; j < cols; ++j)
    if (!col_taken[j]) out.unmatched_cols.push_back(j);
  return out;
}

}  // namespace gson
