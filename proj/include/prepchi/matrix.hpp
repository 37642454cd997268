#pragma once

#include "prepchi/field.hpp"

#include <optional>
#include <vector>

namespace prepchi {

/// Dense matrix acting on column vectors: rows = dimension of the target,
/// cols = dimension of the source. 0xn and nx0 matrices are valid.
template <class K>
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<K> data;  // row-major

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c) {}

    K& at(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
    const K& at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }

    static Matrix identity(int n, const K& one) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = one;
        return m;
    }

    bool is_zero_matrix() const {
        for (const K& x : data)
            if (!is_zero(x)) return false;
        return true;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols != b.rows) throw std::invalid_argument("Matrix: shape mismatch in product");
        Matrix c(a.rows, b.cols);
        for (int i = 0; i < a.rows; ++i)
            for (int k = 0; k < a.cols; ++k) {
                if (is_zero(a.at(i, k))) continue;
                for (int j = 0; j < b.cols; ++j)
                    c.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        return c;
    }
    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        if (a.rows != b.rows || a.cols != b.cols)
            throw std::invalid_argument("Matrix: shape mismatch in sum");
        Matrix c(a.rows, a.cols);
        for (size_t i = 0; i < a.data.size(); ++i) c.data[i] = a.data[i] + b.data[i];
        return c;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.rows != b.rows || a.cols != b.cols) return false;
        for (size_t i = 0; i < a.data.size(); ++i)
            if (!(a.data[i] == b.data[i])) return false;
        return true;
    }

    Matrix scaled(const K& c) const {
        Matrix m(rows, cols);
        for (size_t i = 0; i < data.size(); ++i) m.data[i] = data[i] * c;
        return m;
    }

    Matrix transposed() const {
        Matrix m(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    std::vector<K> apply(const std::vector<K>& v) const {
        if (static_cast<int>(v.size()) != cols)
            throw std::invalid_argument("Matrix: vector length mismatch");
        std::vector<K> out(rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (!is_zero(at(i, j)) && !is_zero(v[j])) out[i] += at(i, j) * v[j];
        return out;
    }

    std::vector<K> row(int r) const {
        return std::vector<K>(data.begin() + static_cast<size_t>(r) * cols,
                              data.begin() + static_cast<size_t>(r + 1) * cols);
    }
    std::vector<K> col(int c) const {
        std::vector<K> out(rows);
        for (int i = 0; i < rows; ++i) out[i] = at(i, c);
        return out;
    }
};

/// Horizontal concatenation of blocks with a common row count.
template <class K>
Matrix<K> hcat(const std::vector<Matrix<K>>& blocks, int rows) {
    int cols = 0;
    for (const auto& b : blocks) {
        if (b.rows != rows) throw std::invalid_argument("hcat: row mismatch");
        cols += b.cols;
    }
    Matrix<K> m(rows, cols);
    int off = 0;
    for (const auto& b : blocks) {
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < b.cols; ++j) m.at(i, off + j) = b.at(i, j);
        off += b.cols;
    }
    return m;
}

/// Vertical concatenation of blocks with a common column count.
template <class K>
Matrix<K> vcat(const std::vector<Matrix<K>>& blocks, int cols) {
    int rows = 0;
    for (const auto& b : blocks) {
        if (b.cols != cols) throw std::invalid_argument("vcat: column mismatch");
        rows += b.rows;
    }
    Matrix<K> m(rows, cols);
    int off = 0;
    for (const auto& b : blocks) {
        for (int i = 0; i < b.rows; ++i)
            for (int j = 0; j < cols; ++j) m.at(off + i, j) = b.at(i, j);
        off += b.rows;
    }
    return m;
}

/// In-place reduced row-echelon form. Returns the pivot columns in order.
template <class K>
std::vector<int> rref(Matrix<K>& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int sel = -1;
        for (int i = r; i < m.rows; ++i)
            if (!is_zero(m.at(i, c))) { sel = i; break; }
        if (sel < 0) continue;
        if (sel != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
        K inv_piv = m.at(r, c);
        for (int j = c; j < m.cols; ++j) m.at(r, j) = m.at(r, j) / inv_piv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || is_zero(m.at(i, c))) continue;
            K f = m.at(i, c);
            for (int j = c; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class K>
int rank(Matrix<K> m) {
    return static_cast<int>(rref(m).size());
}

/// Inverse of a square matrix via Gauss-Jordan on [m | I].
template <class K>
std::optional<Matrix<K>> inverse(const Matrix<K>& m, const K& one) {
    if (m.rows != m.cols) throw std::invalid_argument("inverse: square matrix required");
    int n = m.rows;
    Matrix<K> aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = one;
    }
    std::vector<int> piv = rref(aug);
    for (int i = 0; i < n; ++i)
        if (static_cast<int>(piv.size()) <= i || piv[i] != i) return std::nullopt;
    Matrix<K> inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

/// Canonical solution of m*v = target: RREF pivot solve with all free
/// coordinates set to zero. Returns nullopt when target is not in the image.
template <class K>
std::optional<std::vector<K>> solve_preimage(const Matrix<K>& m, const std::vector<K>& target) {
    if (static_cast<int>(target.size()) != m.rows)
        throw std::invalid_argument("solve_preimage: target length mismatch");
    Matrix<K> aug(m.rows, m.cols + 1);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = target[i];
    }
    std::vector<int> pivots = rref(aug);
    std::vector<K> sol(m.cols);
    for (size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == m.cols) return std::nullopt;  // inconsistent row
        sol[pivots[r]] = aug.at(static_cast<int>(r), m.cols);
    }
    return sol;
}

}  // namespace prepchi
