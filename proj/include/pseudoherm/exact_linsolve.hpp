#pragma once

#include <optional>
#include <vector>

#include "pseudoherm/coefficient.hpp"

namespace pseudoherm {

/// Row-reduced solution of A c = b over Q(i, sqrt2).
struct ExactSolution {
  /// Particular solution with free variables set to zero; empty if inconsistent.
  std::optional<std::vector<CoeffQi2>> particular;
  std::size_t rank = 0;
  /// Basis of the null space of A, one vector per free column.
  std::vector<std::vector<CoeffQi2>> kernel;
};

inline ExactSolution solve_exact(std::vector<std::vector<CoeffQi2>> a, std::vector<CoeffQi2> b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a.front().size() : 0;
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t piv = row;
    while (piv < rows && a[piv][col].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[row]);
    std::swap(b[piv], b[row]);
    const CoeffQi2 inv = a[row][col].inverse();
    for (std::size_t j = col; j < cols; ++j) a[row][j] *= inv;
    b[row] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || a[r][col].is_zero()) continue;
      const CoeffQi2 f = a[r][col];
      for (std::size_t j = col; j < cols; ++j) a[r][j] -= f * a[row][j];
      b[r] -= f * b[row];
    }
    pivot_cols.push_back(col);
    ++row;
  }
  ExactSolution out;
  out.rank = pivot_cols.size();
  bool consistent = true;
  for (std::size_t r = out.rank; r < rows; ++r)
    if (!b[r].is_zero()) consistent = false;
  if (consistent) {
    std::vector<CoeffQi2> x(cols);
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) x[pivot_cols[k]] = b[k];
    out.particular = std::move(x);
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<CoeffQi2> v(cols);
    v[free] = 1;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -a[k][free];
    out.kernel.push_back(std::move(v));
  }
  return out;
}

} // namespace pseudoherm
