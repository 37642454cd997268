#pragma once

#include "prepchi/subspace.hpp"

#include <functional>

namespace prepchi {

/// Gaussian binomial [n choose k]_q, the number of k-dimensional subspaces
/// of F_q^n. Exact integer.
inline Integer gaussian_binomial(int n, int k, const Integer& q) {
    if (k < 0 || k > n) throw std::invalid_argument("gaussian_binomial: need 0 <= k <= n");
    if (q < 2) throw std::invalid_argument("gaussian_binomial: need q >= 2");
    Integer num = 1, den = 1;
    for (int s = 0; s < k; ++s) {
        num *= boost::multiprecision::pow(q, n - s) - 1;
        den *= boost::multiprecision::pow(q, s + 1) - 1;
    }
    if (num % den != 0) throw std::logic_error("gaussian_binomial: non-exact division");
    return num / den;
}

namespace detail {

// Visit every k x d matrix in reduced row-echelon form of full rank k over
// F_p, in lexicographic pivot-combination order.
inline void enumerate_rref(int d, int k, std::uint64_t p,
                           const std::function<void(const Matrix<Fp>&)>& visit) {
    if (k == 0) {
        visit(Matrix<Fp>(0, d));
        return;
    }
    std::vector<int> piv(k);
    for (int i = 0; i < k; ++i) piv[i] = i;
    auto advance = [&]() -> bool {
        int i = k - 1;
        while (i >= 0 && piv[i] == d - k + i) --i;
        if (i < 0) return false;
        ++piv[i];
        for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
        return true;
    };
    do {
        std::vector<bool> is_pivot(d, false);
        for (int c : piv) is_pivot[c] = true;
        std::vector<std::pair<int, int>> free_pos;
        for (int r = 0; r < k; ++r)
            for (int c = piv[r] + 1; c < d; ++c)
                if (!is_pivot[c]) free_pos.emplace_back(r, c);
        Matrix<Fp> m(k, d);
        for (int r = 0; r < k; ++r) m.at(r, piv[r]) = Fp(1, p);
        std::vector<std::uint64_t> vals(free_pos.size(), 0);
        while (true) {
            for (size_t i = 0; i < free_pos.size(); ++i)
                m.at(free_pos[i].first, free_pos[i].second) = Fp(vals[i], p);
            visit(m);
            size_t i = 0;
            while (i < vals.size() && vals[i] == p - 1) vals[i++] = 0;
            if (i == vals.size()) break;
            ++vals[i];
        }
    } while (advance());
}

}  // namespace detail

/// Visit each k-dimensional subspace of the given ambient subspace exactly
/// once, in canonical order. Prime fields only.
inline void enumerate_subspaces(const Subspace<Fp>& ambient, int k, const FieldSpec& field,
                                const std::function<void(const Subspace<Fp>&)>& visit) {
    if (field.is_rational())
        throw std::invalid_argument("enumerate_subspaces: prime field required");
    if (k > ambient.dim())
        throw std::invalid_argument("enumerate_subspaces: k exceeds ambient dimension");
    std::uint64_t p = field.characteristic;
    detail::enumerate_rref(ambient.dim(), k, p, [&](const Matrix<Fp>& coeffs) {
        visit(Subspace<Fp>::from_rows(ambient.ambient, coeffs * ambient.basis));
    });
}

inline std::vector<Subspace<Fp>> list_subspaces(const Subspace<Fp>& ambient, int k,
                                                const FieldSpec& field) {
    std::vector<Subspace<Fp>> out;
    enumerate_subspaces(ambient, k, field, [&](const Subspace<Fp>& s) { out.push_back(s); });
    return out;
}

/// Visit each subspace U with lower <= U <= upper and dim U = dim lower + k,
/// exactly once. Requires lower <= upper.
inline void enumerate_intermediate(const Subspace<Fp>& lower, const Subspace<Fp>& upper, int k,
                                   const FieldSpec& field,
                                   const std::function<void(const Subspace<Fp>&)>& visit) {
    if (!upper.contains(lower))
        throw std::invalid_argument("enumerate_intermediate: lower not inside upper");
    int d = upper.dim() - lower.dim();
    if (k < 0 || k > d) return;
    // complement basis of lower inside upper, one vector per quotient dimension
    std::vector<std::vector<Fp>> quot_basis;
    {
        Subspace<Fp> acc = lower;
        for (int r = 0; r < upper.basis.rows; ++r) {
            std::vector<Fp> v = acc.reduce(upper.basis.row(r));
            bool zero = true;
            for (const Fp& x : v) zero = zero && is_zero(x);
            if (zero) continue;
            quot_basis.push_back(upper.basis.row(r));
            Matrix<Fp> one_row(1, upper.ambient);
            for (int j = 0; j < upper.ambient; ++j) one_row.at(0, j) = upper.basis.at(r, j);
            acc = sum(acc, Subspace<Fp>::from_rows(upper.ambient, one_row));
        }
    }
    std::uint64_t p = field.characteristic;
    detail::enumerate_rref(d, k, p, [&](const Matrix<Fp>& coeffs) {
        Matrix<Fp> rows(coeffs.rows + lower.dim(), upper.ambient);
        for (int r = 0; r < coeffs.rows; ++r)
            for (int j = 0; j < upper.ambient; ++j) {
                Fp acc;
                for (int c = 0; c < d; ++c)
                    if (!is_zero(coeffs.at(r, c))) acc += coeffs.at(r, c) * quot_basis[c][j];
                rows.at(r, j) = acc;
            }
        for (int r = 0; r < lower.basis.rows; ++r)
            for (int j = 0; j < upper.ambient; ++j)
                rows.at(coeffs.rows + r, j) = lower.basis.at(r, j);
        visit(Subspace<Fp>::from_rows(upper.ambient, std::move(rows)));
    });
}

}  // namespace prepchi
