#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rotset/rational.hpp"

namespace rotset::linalg {

using Row = std::vector<Rational>;
using Matrix = std::vector<Row>;

struct Rref {
  Matrix rows;                       // nonzero rows only, reduced echelon form
  std::vector<std::size_t> pivots;   // pivot column of each row
};

Rref row_reduce(Matrix m, std::size_t cols);

std::size_t rank(const Matrix& m, std::size_t cols);

/// Basis of {x : m x = 0}.
Matrix null_space(const Matrix& m, std::size_t cols);

/// Some solution of a x = b, or nullopt when the system is inconsistent.
std::optional<Row> solve(const Matrix& a, const Row& b, std::size_t cols);

Matrix transpose(const Matrix& m, std::size_t cols);

/// Inverse of a square nonsingular matrix; nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

}  // namespace rotset::linalg
