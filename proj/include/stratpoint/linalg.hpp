#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "stratpoint/rational.hpp"

namespace stratpoint::linalg {

inline Matrix zeros(std::size_t rows, std::size_t cols) {
  return Matrix(rows, Vector(cols, Rational(0)));
}

inline Matrix identity(std::size_t n) {
  Matrix m = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline Rational dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Matrix transpose(const Matrix& m) {
  if (m.empty()) return {};
  Matrix t = zeros(m[0].size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

inline bool is_zero(const Vector& v) {
  for (const auto& e : v)
    if (e != 0) return false;
  return true;
}

/// Reduced row echelon form, in place. Returns pivot columns.
inline std::vector<std::size_t> rref(Matrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t piv = row;
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[row], m[piv]);
    const Rational inv = 1 / m[row][col];
    for (auto& e : m[row]) e *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t c = 0; c < m[r].size(); ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(Matrix m) {
  if (m.empty()) return 0;
  return rref(m, m[0].size()).size();
}

/// Solves A v = b. Returns nullopt if inconsistent. Free variables are set to
/// zero; `unique` reports whether A has full column rank.
struct SolveResult {
  Vector solution;
  bool unique = false;
};

inline std::optional<SolveResult> solve(const Matrix& a, const Vector& b,
                                        std::size_t cols) {
  if (a.size() != b.size()) throw DimensionError("solve: row mismatch");
  Matrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) {
    if (aug[i].size() != cols) throw DimensionError("solve: ragged matrix");
    aug[i].push_back(b[i]);
  }
  auto pivots = rref(aug, cols);
  for (std::size_t r = pivots.size(); r < aug.size(); ++r)
    if (aug[r][cols] != 0) return std::nullopt;
  SolveResult out;
  out.solution.assign(cols, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r)
    out.solution[pivots[r]] = aug[r][cols];
  out.unique = pivots.size() == cols;
  return out;
}

inline Rational determinant(Matrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

/// Indices of a maximal linearly independent subset of rows, scanning in
/// order (earlier rows are preferred).
inline std::vector<std::size_t> independent_rows(const Matrix& rows,
                                                 std::size_t cols) {
  std::vector<std::size_t> kept;
  Matrix basis;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Matrix trial = basis;
    trial.push_back(rows[i]);
    if (rank(trial) == trial.size()) {
      basis.push_back(rows[i]);
      kept.push_back(i);
    }
    if (basis.size() == cols) break;
  }
  return kept;
}

}  // namespace stratpoint::linalg
