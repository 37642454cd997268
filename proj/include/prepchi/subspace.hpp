#pragma once

#include "prepchi/matrix.hpp"

#include <algorithm>

namespace prepchi {

/// A linear subspace of field^n in canonical form: the basis rows are in
/// reduced row-echelon form with distinct pivots, so two Subspace values
/// compare equal iff they denote the same subspace.
template <class K>
struct Subspace {
    int ambient = 0;
    Matrix<K> basis;           // dim x ambient, RREF, no zero rows
    std::vector<int> pivots;   // pivot column of each basis row

    static Subspace zero(int n) {
        Subspace s;
        s.ambient = n;
        s.basis = Matrix<K>(0, n);
        return s;
    }

    static Subspace full(int n, const K& one) {
        Subspace s;
        s.ambient = n;
        s.basis = Matrix<K>::identity(n, one);
        for (int i = 0; i < n; ++i) s.pivots.push_back(i);
        return s;
    }

    /// Canonicalize an arbitrary spanning set of row vectors.
    static Subspace from_rows(int n, Matrix<K> rows) {
        if (rows.cols != n) throw std::invalid_argument("Subspace: ambient mismatch");
        Subspace s;
        s.ambient = n;
        s.pivots = rref(rows);
        int d = static_cast<int>(s.pivots.size());
        s.basis = Matrix<K>(d, n);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < n; ++j) s.basis.at(i, j) = rows.at(i, j);
        return s;
    }

    int dim() const { return basis.rows; }

    /// Residue of v after reduction against the basis; zero iff v lies here.
    std::vector<K> reduce(std::vector<K> v) const {
        if (static_cast<int>(v.size()) != ambient)
            throw std::invalid_argument("Subspace: vector length mismatch");
        for (int r = 0; r < basis.rows; ++r) {
            const K& c = v[pivots[r]];
            if (is_zero(c)) continue;
            K f = c;
            for (int j = 0; j < ambient; ++j) v[j] = v[j] - f * basis.at(r, j);
        }
        return v;
    }

    bool contains(const std::vector<K>& v) const {
        for (const K& x : reduce(v))
            if (!is_zero(x)) return false;
        return true;
    }

    bool contains(const Subspace& other) const {
        for (int r = 0; r < other.basis.rows; ++r)
            if (!contains(other.basis.row(r))) return false;
        return true;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient == b.ambient && a.basis == b.basis;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

    friend bool operator<(const Subspace& a, const Subspace& b) {
        if (a.ambient != b.ambient) return a.ambient < b.ambient;
        if (a.basis.rows != b.basis.rows) return a.basis.rows < b.basis.rows;
        for (size_t i = 0; i < a.basis.data.size(); ++i) {
            if (a.basis.data[i] == b.basis.data[i]) continue;
            return to_string(a.basis.data[i]) < to_string(b.basis.data[i]);
        }
        return false;
    }
};

template <class K>
Subspace<K> sum(const Subspace<K>& a, const Subspace<K>& b) {
    if (a.ambient != b.ambient) throw std::invalid_argument("sum: ambient mismatch");
    return Subspace<K>::from_rows(a.ambient, vcat<K>({a.basis, b.basis}, a.ambient));
}

inline Rational unit_like(const Matrix<Rational>&, const Matrix<Rational>&) { return Rational(1); }
inline Fp unit_like(const Matrix<Fp>& m, const Matrix<Fp>& red) {
    for (const Fp& x : m.data)
        if (x.p != 0) return Fp(1, x.p);
    for (const Fp& x : red.data)
        if (x.p != 0) return Fp(1, x.p);
    Fp bare;  // zero map over an unstated field: bare unit, promoted on use
    bare.v = 1;
    return bare;
}

/// Kernel of m as a subspace of field^cols.
template <class K>
Subspace<K> kernel(const Matrix<K>& m) {
    Matrix<K> red = m;
    std::vector<int> piv = rref(red);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : piv) is_pivot[c] = true;
    // one kernel vector per free column, free coordinate set to one
    int nk = m.cols - static_cast<int>(piv.size());
    Matrix<K> rows(nk, m.cols);
    // unit scalar: divide a pivot entry by itself, or synthesize for Fp
    int r = 0;
    for (int c = 0; c < m.cols; ++c) {
        if (is_pivot[c]) continue;
        for (size_t pr = 0; pr < piv.size(); ++pr)
            if (piv[pr] < c) rows.at(r, piv[pr]) = -red.at(static_cast<int>(pr), c);
        rows.at(r, c) = unit_like(m, red);
        ++r;
    }
    return Subspace<K>::from_rows(m.cols, std::move(rows));
}

/// Column space of m as a subspace of field^rows.
template <class K>
Subspace<K> image(const Matrix<K>& m) {
    return Subspace<K>::from_rows(m.rows, m.transposed());
}

template <class K>
struct RankKernelImage {
    int rank;
    Subspace<K> kernel;
    Subspace<K> image;
};

template <class K>
RankKernelImage<K> rank_kernel_image(const Matrix<K>& m) {
    Subspace<K> im = image(m);
    return RankKernelImage<K>{im.dim(), kernel(m), im};
}

/// Matrix of the canonical projection field^n -> field^(n - dim S) with
/// kernel S, reading off the non-pivot coordinates after reduction.
template <class K>
Matrix<K> quotient_matrix(const Subspace<K>& s, const K& one) {
    std::vector<bool> is_pivot(s.ambient, false);
    for (int c : s.pivots) is_pivot[c] = true;
    Matrix<K> q(s.ambient - s.dim(), s.ambient);
    int r = 0;
    for (int c = 0; c < s.ambient; ++c) {
        if (is_pivot[c]) continue;
        q.at(r, c) = one;
        for (int pr = 0; pr < s.basis.rows; ++pr)
            q.at(r, s.pivots[pr]) = -s.basis.at(pr, c);
        ++r;
    }
    return q;
}

/// Section of quotient_matrix: embeds coordinates back at the non-pivot
/// positions, so quotient_matrix * section = identity.
template <class K>
Matrix<K> section_matrix(const Subspace<K>& s, const K& one) {
    std::vector<bool> is_pivot(s.ambient, false);
    for (int c : s.pivots) is_pivot[c] = true;
    Matrix<K> sec(s.ambient, s.ambient - s.dim());
    int r = 0;
    for (int c = 0; c < s.ambient; ++c) {
        if (is_pivot[c]) continue;
        sec.at(c, r) = one;
        ++r;
    }
    return sec;
}

/// {v : m v in s}, a subspace of the source.
template <class K>
Subspace<K> preimage(const Matrix<K>& m, const Subspace<K>& s, const K& one) {
    if (s.ambient != m.rows) throw std::invalid_argument("preimage: ambient mismatch");
    if (s.dim() == s.ambient) return Subspace<K>::full(m.cols, one);
    return kernel(quotient_matrix(s, one) * m);
}

template <class K>
Subspace<K> intersect(const Subspace<K>& a, const Subspace<K>& b) {
    if (a.ambient != b.ambient) throw std::invalid_argument("intersect: ambient mismatch");
    // (a cap b)^perp = a^perp + b^perp, with perp realized as a kernel
    Subspace<K> pa = kernel(a.basis);
    Subspace<K> pb = kernel(b.basis);
    Subspace<K> ps = sum(pa, pb);
    return kernel(ps.basis);
}

}  // namespace prepchi
