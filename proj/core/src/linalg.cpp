#include "rotset/linalg.hpp"

#include <utility>

namespace rotset::linalg {

Rref row_reduce(Matrix m, std::size_t cols) {
  Rref out;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < cols && lead_row < m.size(); ++c) {
    std::size_t pivot = lead_row;
    while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[lead_row]);
    Rational inv = 1 / m[lead_row][c];
    for (std::size_t k = c; k < cols; ++k) m[lead_row][k] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == lead_row || m[r][c] == 0) continue;
      Rational factor = m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= factor * m[lead_row][k];
    }
    out.pivots.push_back(c);
    ++lead_row;
  }
  m.resize(lead_row);
  out.rows = std::move(m);
  return out;
}

std::size_t rank(const Matrix& m, std::size_t cols) { return row_reduce(m, cols).pivots.size(); }

Matrix null_space(const Matrix& m, std::size_t cols) {
  Rref r = row_reduce(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  Matrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Row x(cols, Rational(0));
    x[free] = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) x[r.pivots[i]] = -r.rows[i][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<Row> solve(const Matrix& a, const Row& b, std::size_t cols) {
  Matrix aug;
  aug.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    Row row = a[i];
    row.resize(cols);
    row.push_back(b[i]);
    aug.push_back(std::move(row));
  }
  Rref r = row_reduce(std::move(aug), cols + 1);
  if (!r.pivots.empty() && r.pivots.back() == cols) return std::nullopt;
  Row x(cols, Rational(0));
  for (std::size_t i = 0; i < r.pivots.size(); ++i) x[r.pivots[i]] = r.rows[i][cols];
  return x;
}

Matrix transpose(const Matrix& m, std::size_t cols) {
  Matrix t(cols, Row(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
  return t;
}

std::optional<Matrix> inverse(const Matrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return Matrix{};
  Matrix aug(n, Row(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  Rref r = row_reduce(std::move(aug), 2 * n);
  if (r.pivots.size() < n || r.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, Row(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = r.rows[i][n + j];
  return inv;
}

}  // namespace rotset::linalg
