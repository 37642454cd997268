#pragma once

#include "prepchi/adapted.hpp"

namespace prepchi {

/// Filtration 0 = X_0 <= X_1 <= ... <= X_n = W with jumps exactly at J.
template <class K>
struct FiltrationX {
    std::vector<Subspace<K>> X;  // size n + 1
};

/// Chart of the variety of such filtrations: a |J| x |K| matrix with entries
/// fixed to 0 or 1 by the diagram or left free, plus the span constraint on
/// the unit rows of K \ J and invertibility.
struct MatrixChart {
    static constexpr int fixed0 = 0;
    static constexpr int fixed1 = 1;
    static constexpr int free_entry = 2;

    std::vector<int> row_index;  // J, increasing
    std::vector<int> col_index;  // K, increasing
    std::vector<std::vector<int>> entry;  // entry codes
    std::vector<std::pair<int, int>> free_positions;  // (row, col) offsets
    std::vector<int> span_rows;  // p in K \ J: unit row at p in span of rows > p
    bool empty = false;  // condition (A) failed, no chart points

    int free_count() const { return static_cast<int>(free_positions.size()); }
    int row_of(int p) const {
        for (size_t r = 0; r < row_index.size(); ++r)
            if (row_index[r] == p) return static_cast<int>(r);
        throw std::invalid_argument("MatrixChart: index not in J");
    }
    int col_of(int q) const {
        for (size_t c = 0; c < col_index.size(); ++c)
            if (col_index[c] == q) return static_cast<int>(c);
        throw std::invalid_argument("MatrixChart: index not in K");
    }
};

inline MatrixChart build_chart(const Diagram& d, const std::set<int>& J) {
    MatrixChart ch;
    ch.row_index.assign(J.begin(), J.end());
    ch.col_index.assign(d.gray.begin(), d.gray.end());
    if (!condition_A(d, J)) {
        ch.empty = true;
        return ch;
    }
    int nr = static_cast<int>(ch.row_index.size());
    int nc = static_cast<int>(ch.col_index.size());
    ch.entry.assign(nr, std::vector<int>(nc, MatrixChart::fixed0));
    for (int r = 0; r < nr; ++r) {
        int p = ch.row_index[r];
        if (!d.is_top(p)) {
            ch.entry[r][ch.col_of(p)] = MatrixChart::fixed1;  // unit row
            continue;
        }
        int qb = d.bottom_of(p);
        for (int c = 0; c < nc; ++c) {
            int q = ch.col_index[c];
            if (q == qb) {
                ch.entry[r][c] = MatrixChart::fixed1;
                continue;
            }
            bool fixed_zero = false;
            // bottoms of other tops: zero when that top is earlier or in J
            for (auto [t, b] : d.columns)
                if (b == q && t != p) fixed_zero = (t < p) || J.count(t);
            // unit-row pivots further down the flag
            if (!d.is_top(q) && q > p && J.count(q)) fixed_zero = true;
            if (!fixed_zero) ch.entry[r][c] = MatrixChart::free_entry;
        }
    }
    for (int r = 0; r < nr; ++r)
        for (int c = 0; c < nc; ++c)
            if (ch.entry[r][c] == MatrixChart::free_entry) ch.free_positions.emplace_back(r, c);
    for (int q : ch.col_index)
        if (!J.count(q)) ch.span_rows.push_back(q);
    return ch;
}

/// Fill the free entries (in free_positions order) into a concrete matrix.
template <class K>
Matrix<K> chart_instance(const MatrixChart& ch, const std::vector<K>& free_values, const K& one) {
    if (ch.empty) throw std::invalid_argument("chart_instance: empty chart");
    if (free_values.size() != ch.free_positions.size())
        throw std::invalid_argument("chart_instance: wrong number of free values");
    Matrix<K> xi(static_cast<int>(ch.row_index.size()), static_cast<int>(ch.col_index.size()));
    for (size_t r = 0; r < ch.row_index.size(); ++r)
        for (size_t c = 0; c < ch.col_index.size(); ++c)
            if (ch.entry[r][c] == MatrixChart::fixed1)
                xi.at(static_cast<int>(r), static_cast<int>(c)) = one;
    for (size_t i = 0; i < free_values.size(); ++i)
        xi.at(ch.free_positions[i].first, ch.free_positions[i].second) = free_values[i];
    return xi;
}

/// Check an instance against the fixed pattern (C)/(D) and the constraints
/// (E) (unit rows of K \ J in the span of later chart rows) and (F)
/// (invertibility).
template <class K>
bool chart_constraints_ok(const MatrixChart& ch, const Matrix<K>& xi, const K& one) {
    if (ch.empty) return false;
    int nr = static_cast<int>(ch.row_index.size());
    int nc = static_cast<int>(ch.col_index.size());
    if (xi.rows != nr || xi.cols != nc) return false;
    for (int r = 0; r < nr; ++r)
        for (int c = 0; c < nc; ++c) {
            if (ch.entry[r][c] == MatrixChart::fixed0 && !is_zero(xi.at(r, c))) return false;
            if (ch.entry[r][c] == MatrixChart::fixed1 && !(xi.at(r, c) == one)) return false;
        }
    if (rank(xi) != nr) return false;  // (F); |J| = |K| so square
    for (int p : ch.span_rows) {
        Matrix<K> later(0, nc);
        std::vector<Matrix<K>> rows;
        for (int r = 0; r < nr; ++r)
            if (ch.row_index[r] > p) {
                Matrix<K> one_row(1, nc);
                for (int c = 0; c < nc; ++c) one_row.at(0, c) = xi.at(r, c);
                rows.push_back(std::move(one_row));
            }
        Subspace<K> span = rows.empty() ? Subspace<K>::zero(nc)
                                        : Subspace<K>::from_rows(nc, vcat(rows, nc));
        std::vector<K> unit(nc);
        unit[ch.col_of(p)] = one;
        if (!span.contains(unit)) return false;  // (E)
    }
    return true;
}

namespace detail {

/// phi_p as a row functional on field^n: sum over q in K of xi_{pq} e_q*,
/// where e_q* is row q of the inverse basis matrix.
template <class K>
Matrix<K> chart_forms(const MatrixChart& ch, const Matrix<K>& xi, const Matrix<K>& einv) {
    int n = einv.cols;
    Matrix<K> phi(xi.rows, n);
    for (int r = 0; r < xi.rows; ++r)
        for (size_t c = 0; c < ch.col_index.size(); ++c) {
            const K& coeff = xi.at(r, static_cast<int>(c));
            if (is_zero(coeff)) continue;
            for (int j = 0; j < n; ++j)
                phi.at(r, j) += coeff * einv.at(ch.col_index[c] - 1, j);
        }
    return phi;
}

}  // namespace detail

/// X_p = {v in W : phi_{p'}(v) = 0 for all p' in J with p' > p}.
template <class K>
FiltrationX<K> xi_to_filtration(const Matrix<K>& xi, const MatrixChart& ch,
                                const FiltrationSetup<K>& s, const Matrix<K>& e) {
    K one = s.one();
    if (!chart_constraints_ok(ch, xi, one))
        throw std::invalid_argument("xi_to_filtration: constraint violation in the chart instance");
    auto einv = inverse(e, one);
    if (!einv) throw std::invalid_argument("xi_to_filtration: basis not invertible");
    Matrix<K> phi = detail::chart_forms(ch, xi, *einv);

    FiltrationX<K> f;
    f.X.resize(s.n + 1);
    for (int p = 0; p <= s.n; ++p) {
        std::vector<Matrix<K>> rows;
        for (size_t r = 0; r < ch.row_index.size(); ++r)
            if (ch.row_index[r] > p) {
                Matrix<K> one_row(1, s.n);
                for (int j = 0; j < s.n; ++j) one_row.at(0, j) = phi.at(static_cast<int>(r), j);
                rows.push_back(std::move(one_row));
            }
        if (rows.empty()) {
            f.X[p] = s.W;
            continue;
        }
        Matrix<K> a = vcat(rows, s.n);
        f.X[p] = intersect(s.W, kernel(a));
    }

    // postconditions (g), (h), (i)
    for (int p = 1; p <= s.n; ++p) {
        int jump = s.J.count(p) ? 1 : 0;
        if (f.X[p].dim() - f.X[p - 1].dim() != jump)
            throw std::logic_error("xi_to_filtration: jump pattern (g) fails");
        Subspace<K> vp = coordinate_prefix(s.n, p, one);
        if (!vp.contains(f.X[p]) || !f.X[p].contains(image_on_prefix(s.x, p)))
            throw std::logic_error("xi_to_filtration: window (h) fails");
        if (jump) {
            Subspace<K> vp1 = coordinate_prefix(s.n, p - 1, one);
            bool eta1 = !vp1.contains(f.X[p]);
            bool eta2 = !f.X[p - 1].contains(image_on_prefix(s.x, p));
            if (!eta1 && !eta2) throw std::logic_error("xi_to_filtration: condition (i) fails");
        }
    }
    return f;
}

/// The unique normalized chart instance representing a filtration: solve for
/// each top row against X_{p-1}, then clear the pivot columns of all rows
/// further down the flag (column bottoms first, unit pivots last).
template <class K>
Matrix<K> filtration_to_xi(const FiltrationX<K>& f, const MatrixChart& ch,
                           const FiltrationSetup<K>& s, const Matrix<K>& e,
                           const Diagram& d) {
    if (ch.empty) throw std::invalid_argument("filtration_to_xi: empty chart");
    K one = s.one();
    auto einv = inverse(e, one);
    if (!einv) throw std::invalid_argument("filtration_to_xi: basis not invertible");
    int nr = static_cast<int>(ch.row_index.size());
    int nc = static_cast<int>(ch.col_index.size());
    Matrix<K> xi(nr, nc);

    for (int r = nr - 1; r >= 0; --r) {
        int p = ch.row_index[r];
        if (!d.is_top(p)) {
            xi.at(r, ch.col_of(p)) = one;
            continue;
        }
        int qb = d.bottom_of(p);
        // phi vanishes on X_{p-1}, takes value 1 on e_{qb} = x(e_p)
        const Subspace<K>& xprev = f.X[p - 1];
        Matrix<K> sys(xprev.dim() + 1, nc);
        for (int w = 0; w < xprev.dim(); ++w) {
            std::vector<K> coords = einv->apply(xprev.basis.row(w));
            for (int c = 0; c < nc; ++c) sys.at(w, c) = coords[ch.col_index[c] - 1];
        }
        sys.at(xprev.dim(), ch.col_of(qb)) = one;
        std::vector<K> rhs(xprev.dim() + 1);
        rhs[xprev.dim()] = one;
        auto sol = solve_preimage(sys, rhs);
        if (!sol)
            throw std::invalid_argument("filtration_to_xi: filtration not representable");
        std::vector<K> row = *sol;
        // normalization: clear coefficients at the pivot columns of all rows
        // below in the flag — bottoms of later J-tops first, then unit pivots
        for (int r2 = nr - 1; r2 > r; --r2) {
            int p2 = ch.row_index[r2];
            if (!d.is_top(p2)) continue;
            K coef = row[ch.col_of(d.bottom_of(p2))];
            if (is_zero(coef)) continue;
            for (int c = 0; c < nc; ++c) row[c] = row[c] - coef * xi.at(r2, c);
        }
        for (int q : ch.col_index)
            if (q > p && !d.is_top(q) && s.J.count(q)) row[ch.col_of(q)] = K{};
        for (int c = 0; c < nc; ++c) xi.at(r, c) = row[c];
    }

    if (!chart_constraints_ok(ch, xi, one))
        throw std::logic_error("filtration_to_xi: normalized instance violates the chart");
    return xi;
}

}  // namespace prepchi
