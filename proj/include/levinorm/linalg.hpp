#ifndef LEVINORM_LINALG_HPP
#define LEVINORM_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "levinorm/ring.hpp"

namespace levinorm {

using Row = std::vector<GaussianRational>;
using Matrix = std::vector<Row>;

struct Echelon {
    Matrix rows;                       // reduced rows, one per pivot
    std::vector<std::size_t> pivots;  // pivot column of each row, ascending
};

/// Reduced row echelon form of a dense matrix with the given column count.
Echelon row_reduce(Matrix m, std::size_t cols);

/// Solution of A x = b with every free variable set to zero, or nullopt when
/// the system is inconsistent.
std::optional<Row> solve_linear(const Matrix& a, const Row& b, std::size_t cols);

/// Determinant of a square matrix.
GaussianRational determinant(Matrix m);

}  // namespace levinorm

#endif  // LEVINORM_LINALG_HPP
