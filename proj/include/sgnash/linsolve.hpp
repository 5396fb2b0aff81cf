#pragma once

#include <stdexcept>
#include <vector>

namespace sgnash {

/// Exact Gaussian elimination over an ordered field scalar S (Rat or
/// QuadExt). Solves A X = B in place for possibly many right-hand sides;
/// pivoting picks the first row with a nonzero entry, so results are
/// deterministic. Throws on a singular matrix.
template <class S>
std::vector<std::vector<S>> solve_linear(std::vector<std::vector<S>> a, std::vector<std::vector<S>> b) {
  const int n = static_cast<int>(a.size());
  const int m = n == 0 ? 0 : static_cast<int>(b[0].size());
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int row = col; row < n; ++row) {
      if (sign(a[row][col]) != 0) {
        pivot = row;
        break;
      }
    }
    if (pivot < 0) throw std::domain_error("solve_linear: singular matrix");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    S inv = S(1) / a[col][col];
    for (int j = col; j < n; ++j) a[col][j] *= inv;
    for (int j = 0; j < m; ++j) b[col][j] *= inv;
    for (int row = 0; row < n; ++row) {
      if (row == col || sign(a[row][col]) == 0) continue;
      S factor = a[row][col];
      for (int j = col; j < n; ++j) a[row][j] -= factor * a[col][j];
      for (int j = 0; j < m; ++j) b[row][j] -= factor * b[col][j];
    }
  }
  return b;
}

}  // namespace sgnash
