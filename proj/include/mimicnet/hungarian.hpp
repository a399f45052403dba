#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <type_traits>
#include <vector>

#include "mimicnet/error.hpp"

namespace mimicnet {

template <typename Cost>
struct Assignment {
  std::vector<std::size_t> row_to_col;
  Cost total{};
};

namespace detail {

template <typename Cost>
bool tight(Cost reduced, Cost scale) {
  if constexpr (std::is_floating_point_v<Cost>) {
    return std::abs(reduced) <= Cost(1e-9) * std::max(Cost(1), scale);
  } else {
    return reduced == 0;
  }
}

}  // namespace detail

/// Minimum-cost assignment of every row of a rows x cols matrix (rows <= cols)
/// to a distinct column.
///
/// The matrix is padded to square with `pad_cost` rows and solved with the
/// O(n^3) shortest-augmenting-path Hungarian method. Among all optimal
/// assignments the lexicographically smallest row->column vector is returned:
/// with optimal potentials an assignment is optimal iff it uses only tight
/// cells, so rows are fixed greedily to their smallest tight column that
/// still admits a perfect tight matching of the remainder.
template <typename Cost>
Assignment<Cost> hungarian(const std::vector<std::vector<Cost>>& cost, Cost pad_cost = Cost{}) {
  const std::size_t rows = cost.size();
  const std::size_t cols = rows == 0 ? 0 : cost[0].size();
  for (const auto& r : cost) {
    if (r.size() != cols) throw ShapeError("ragged cost matrix");
  }
  if (rows > cols) throw ShapeError("more rows than columns");
  Cost scale{};
  for (const auto& r : cost) {
    for (Cost c : r) {
      if constexpr (std::is_floating_point_v<Cost>) {
        if (!std::isfinite(c)) throw ShapeError("non-finite cost");
      }
      if (c < Cost{}) throw ShapeError("negative cost");
      scale = std::max(scale, c);
    }
  }
  Assignment<Cost> result;
  if (rows == 0) return result;

  const std::size_t n = cols;
  auto at = [&](std::size_t i, std::size_t j) -> Cost { return i < rows ? cost[i][j] : pad_cost; };

  // 1-based potentials; p[j] = row matched to column j.
  const Cost inf = std::numeric_limits<Cost>::max() / 4;
  std::vector<Cost> u(n + 1, Cost{}), v(n + 1, Cost{});
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<Cost> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      Cost delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        Cost cur = at(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
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
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  // Tight-cell graph over 0-based rows/cols, and the current perfect matching.
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (detail::tight(at(i, j) - u[i + 1] - v[j + 1], scale)) adj[i].push_back(j);
    }
  }
  std::vector<std::size_t> row_of(n), col_of(n);
  for (std::size_t j = 1; j <= n; ++j) {
    row_of[j - 1] = p[j] - 1;
    col_of[p[j] - 1] = j - 1;
  }

  // Rows < `fixed` keep their columns; try to re-route row r onto column c by
  // an alternating path that frees col_of[r] through unfixed rows.
  std::vector<char> fixed_col(n, 0);
  std::vector<std::size_t> seen_stamp(n, 0);
  std::size_t stamp = 0;
  std::vector<std::size_t> prev_row(n), prev_col(n);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c : adj[r]) {
      if (fixed_col[c]) continue;
      if (c == col_of[r]) break;
      // BFS from row_of[c] to reach col_of[r] via tight edges, unfixed rows only.
      const std::size_t target = col_of[r];
      const std::size_t start = row_of[c];
      ++stamp;
      std::vector<std::size_t> queue{start};
      seen_stamp[c] = stamp;
      bool found = false;
      std::size_t end_col = 0;
      for (std::size_t qi = 0; qi < queue.size() && !found; ++qi) {
        const std::size_t row = queue[qi];
        for (std::size_t col : adj[row]) {
          if (fixed_col[col] || seen_stamp[col] == stamp || col == col_of[row]) continue;
          seen_stamp[col] = stamp;
          prev_row[col] = row;
          if (col == target) {
            found = true;
            end_col = col;
            break;
          }
          if (row_of[col] == r) continue;
          queue.push_back(row_of[col]);
        }
      }
      if (!found) continue;
      // Shift along the path: each row on it takes the column that led to it.
      std::size_t col = end_col;
      while (true) {
        const std::size_t row = prev_row[col];
        const std::size_t old = col_of[row];
        col_of[row] = col;
        row_of[col] = row;
        if (row == start) break;
        col = old;
      }
      col_of[r] = c;
      row_of[c] = r;
      break;
    }
    fixed_col[col_of[r]] = 1;
  }

  result.row_to_col.assign(col_of.begin(), col_of.begin() + static_cast<std::ptrdiff_t>(rows));
  for (std::size_t i = 0; i < rows; ++i) result.total += cost[i][result.row_to_col[i]];
  return result;
}

}  // namespace mimicnet
