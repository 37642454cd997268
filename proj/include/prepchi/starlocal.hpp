#pragma once

#include "prepchi/module.hpp"

#include <optional>

namespace prepchi {

/// Is m strictly upper triangular?
template <class K>
bool strictly_upper_triangular(const Matrix<K>& m) {
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j <= i && j < m.cols; ++j)
            if (!is_zero(m.at(i, j))) return false;
    return true;
}

/// Find a basis e_1..e_n of tilde(M)_i adapted to the filtration induced by
/// the given ray ordering (standard coordinate flags on each M_k, gaining one
/// dimension in M_{j_s} at step s) in which x is strictly upper triangular.
/// Returns the basis as the columns of an invertible matrix, or nullopt when
/// x does not leave the induced filtration stable.
template <class K>
std::optional<Matrix<K>> triangular_basis(const LambdaModule<K>& m, int i,
                                          const std::vector<int>& vertex_order) {
    VertexLocalData<K> d = local_data(m, i);
    int n = d.tilde_dim;
    K one = m.one();

    int r = static_cast<int>(vertex_order.size());
    {
        std::map<int, int> totals;
        for (int v : vertex_order) totals[v] += 1;
        for (auto [k, c] : totals)
            if (k == i || c != m.dim(k))
                throw std::invalid_argument(
                    "triangular_basis: ordering does not match dims at vertex " +
                    std::to_string(k));
    }

    // running coordinate count per vertex, turned into tilde subspaces
    std::map<int, int> counts;
    std::vector<Subspace<K>> filt;  // filt[s] = tilde V_{s+1}
    for (int s = 0; s < r; ++s) {
        counts[vertex_order[s]] += 1;
        Matrix<K> rows(0, n);
        std::vector<Matrix<K>> row_list;
        for (size_t b = 0; b < d.arrow_order.size(); ++b) {
            const Arrow& h = m.graph.arrow_by_id(d.arrow_order[b]);
            int c = counts.count(h.target) ? counts[h.target] : 0;
            for (int t = 0; t < c; ++t) {
                Matrix<K> row(1, n);
                row.at(0, d.block_offset[b] + t) = one;
                row_list.push_back(std::move(row));
            }
        }
        filt.push_back(Subspace<K>::from_rows(n, vcat(row_list, n)));
    }
    if (r == 0 || filt.back().dim() != n)
        if (n != 0) throw std::invalid_argument("triangular_basis: filtration does not reach tilde");

    // stability of the filtration under x
    for (const Subspace<K>& vs : filt) {
        Matrix<K> img = d.x * vs.basis.transposed();
        for (int c = 0; c < img.cols; ++c)
            if (!vs.contains(img.col(c))) return std::nullopt;
    }

    std::vector<std::vector<K>> basis_cols;
    Subspace<K> prev = Subspace<K>::zero(n);
    for (int s = 0; s < r; ++s) {
        const Subspace<K>& cur = filt[s];
        int ds = cur.dim() - prev.dim();
        if (ds == 0) continue;
        // complement vectors of prev inside cur
        std::vector<std::vector<K>> comp;
        {
            Subspace<K> acc = prev;
            for (int rr = 0; rr < cur.basis.rows && static_cast<int>(comp.size()) < ds; ++rr) {
                std::vector<K> v = cur.basis.row(rr);
                std::vector<K> red = acc.reduce(v);
                bool zero = true;
                for (const K& xv : red) zero = zero && is_zero(xv);
                if (zero) continue;
                comp.push_back(v);
                Matrix<K> one_row(1, n);
                for (int j = 0; j < n; ++j) one_row.at(0, j) = v[j];
                acc = sum(acc, Subspace<K>::from_rows(n, one_row));
            }
        }
        // induced endomorphism on cur/prev in the comp coordinates
        Matrix<K> solver(n, ds + prev.dim());
        for (int c = 0; c < ds; ++c)
            for (int j = 0; j < n; ++j) solver.at(j, c) = comp[c][j];
        for (int rr = 0; rr < prev.basis.rows; ++rr)
            for (int j = 0; j < n; ++j) solver.at(j, ds + rr) = prev.basis.at(rr, j);
        Matrix<K> xbar(ds, ds);
        for (int c = 0; c < ds; ++c) {
            std::vector<K> xv = d.x.apply(comp[c]);
            auto sol = solve_preimage(solver, xv);
            if (!sol) return std::nullopt;  // x leaves cur unstable
            for (int a = 0; a < ds; ++a) xbar.at(a, c) = (*sol)[a];
        }
        // order the quotient basis along the kernel chain of the nilpotent xbar
        std::vector<std::vector<K>> ordered;
        Subspace<K> taken = Subspace<K>::zero(ds);
        Matrix<K> power = Matrix<K>::identity(ds, one);
        for (int depth = 1; static_cast<int>(ordered.size()) < ds; ++depth) {
            if (depth > ds) throw std::logic_error("triangular_basis: induced map not nilpotent");
            power = xbar * power;
            Subspace<K> ker_d = kernel(power);
            for (int rr = 0; rr < ker_d.basis.rows; ++rr) {
                std::vector<K> v = ker_d.basis.row(rr);
                std::vector<K> red = taken.reduce(v);
                bool zero = true;
                for (const K& xv : red) zero = zero && is_zero(xv);
                if (zero) continue;
                ordered.push_back(v);
                Matrix<K> one_row(1, ds);
                for (int j = 0; j < ds; ++j) one_row.at(0, j) = v[j];
                taken = sum(taken, Subspace<K>::from_rows(ds, one_row));
            }
        }
        for (const auto& qv : ordered) {
            std::vector<K> lifted(n);
            for (int c = 0; c < ds; ++c)
                for (int j = 0; j < n; ++j)
                    if (!is_zero(qv[c])) lifted[j] += qv[c] * comp[c][j];
            basis_cols.push_back(std::move(lifted));
        }
        prev = cur;
    }

    Matrix<K> e(n, n);
    for (int c = 0; c < n; ++c)
        for (int j = 0; j < n; ++j) e.at(j, c) = basis_cols[c][j];
    auto einv = inverse(e, one);
    if (!einv) throw std::logic_error("triangular_basis: produced a singular basis");
    if (!strictly_upper_triangular(*einv * d.x * e))
        throw std::logic_error("triangular_basis: x not strictly upper triangular");
    return e;
}

/// Rewrite the local data of M at vertex i as a module over the star quiver
/// with one ray per basis vector of tilde(M)_i. The basis must make x
/// strictly upper triangular.
template <class K>
LambdaModule<K> star_localize(const LambdaModule<K>& m, int i, const Matrix<K>& basis) {
    VertexLocalData<K> d = local_data(m, i);
    int n = d.tilde_dim;
    if (basis.rows != n || basis.cols != n)
        throw std::invalid_argument("star_localize: basis shape mismatch");
    auto binv = inverse(basis, m.one());
    if (!binv) throw std::invalid_argument("star_localize: basis not invertible");
    if (!strictly_upper_triangular(*binv * d.x * basis))
        throw std::invalid_argument("star_localize: x not strictly upper triangular in basis");

    Matrix<K> in_e = d.m_in * basis;    // M_i <- coords in e
    Matrix<K> out_e = *binv * d.m_out;  // coords in e <- M_i

    QuiverGraph star = star_quiver(n);
    LambdaModule<K> s;
    s.graph = star;
    s.field = m.field;
    s.dims[0] = m.dim(i);
    for (int j = 1; j <= n; ++j) s.dims[j] = 1;
    for (int j = 1; j <= n; ++j) {
        std::string id = "r" + std::to_string(j);
        Matrix<K> mh(1, m.dim(i));  // 0 -> j, eps = +1: block of m_out
        for (int c = 0; c < m.dim(i); ++c) mh.at(0, c) = out_e.at(j - 1, c);
        Matrix<K> mhstar(m.dim(i), 1);  // j -> 0: block of m_in
        for (int rr = 0; rr < m.dim(i); ++rr) mhstar.at(rr, 0) = in_e.at(rr, j - 1);
        s.maps[id] = std::move(mh);
        s.maps[id + "*"] = std::move(mhstar);
    }
    return s;
}

}  // namespace prepchi
