#include "levinorm/linalg.hpp"

#include <stdexcept>

namespace levinorm {

Echelon row_reduce(Matrix m, std::size_t cols) {
    Echelon out;
    std::size_t next = 0;
    for (std::size_t col = 0; col < cols && next < m.size(); ++col) {
        std::size_t pivot = next;
        while (pivot < m.size() && m[pivot][col].is_zero()) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[pivot], m[next]);
        Row& prow = m[next];
        const GaussianRational inv = GaussianRational(1) / prow[col];
        for (std::size_t c = col; c < cols; ++c)
            if (!prow[c].is_zero()) prow[c] *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == next || m[r][col].is_zero()) continue;
            const GaussianRational factor = m[r][col];
            for (std::size_t c = col; c < cols; ++c)
                if (!prow[c].is_zero()) m[r][c] -= factor * prow[c];
        }
        out.pivots.push_back(col);
        ++next;
    }
    m.resize(next);
    out.rows = std::move(m);
    return out;
}

std::optional<Row> solve_linear(const Matrix& a, const Row& b, std::size_t cols) {
    if (a.size() != b.size()) throw std::invalid_argument("right-hand side length mismatch");
    Matrix aug;
    aug.reserve(a.size());
    for (std::size_t r = 0; r < a.size(); ++r) {
        Row row = a[r];
        if (row.size() != cols) throw std::invalid_argument("row length mismatch");
        row.push_back(b[r]);
        aug.push_back(std::move(row));
    }
    const Echelon e = row_reduce(std::move(aug), cols + 1);
    Row x(cols);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] == cols) return std::nullopt;
        x[e.pivots[i]] = e.rows[i][cols];
    }
    return x;
}

GaussianRational determinant(Matrix m) {
    const std::size_t n = m.size();
    GaussianRational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col].is_zero()) ++pivot;
        if (pivot == n) return 0;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        const GaussianRational inv = GaussianRational(1) / m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero()) continue;
            const GaussianRational factor = m[r][col] * inv;
            for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
        }
    }
    return det;
}

}  // namespace levinorm
