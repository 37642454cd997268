#pragma once

#include "prepchi/enumerate.hpp"
#include "prepchi/polynomial.hpp"

#include <optional>
#include <set>

namespace prepchi {

/// V = field^n with the standard flag V_p = span(first p coordinates), an
/// endomorphism x with x^2 = 0 stabilizing the flag, a subspace W squeezed
/// between im x and ker x, and a jump set J of size k = dim W.
template <class K>
struct FiltrationSetup {
    int n = 0;
    int k = 0;
    FieldSpec field;
    Matrix<K> x;
    Subspace<K> W;
    std::set<int> J;  // subset of {1..n}

    K one() const {
        if constexpr (std::is_same_v<K, Fp>)
            return Fp(1, field.characteristic);
        else
            return K(1);
    }
};

/// span of the first p standard coordinates of field^n
template <class K>
Subspace<K> coordinate_prefix(int n, int p, const K& one) {
    Matrix<K> rows(p, n);
    for (int i = 0; i < p; ++i) rows.at(i, i) = one;
    return Subspace<K>::from_rows(n, std::move(rows));
}

template <class K>
Subspace<K> coordinate_span(int n, const std::set<int>& idx, const K& one) {
    Matrix<K> rows(static_cast<int>(idx.size()), n);
    int r = 0;
    for (int s : idx) rows.at(r++, s - 1) = one;
    return Subspace<K>::from_rows(n, std::move(rows));
}

/// image of x restricted to the prefix subspace V_m
template <class K>
Subspace<K> image_on_prefix(const Matrix<K>& x, int m) {
    Matrix<K> cols(x.rows, m);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < m; ++j) cols.at(i, j) = x.at(i, j);
    return image(cols);
}

struct SetupViolation {
    bool ok = true;
    std::string item;  // "(d)", "(e)", "(f)" or a shape label
    std::string message;
};

template <class K>
SetupViolation validate_setup(const FiltrationSetup<K>& s) {
    if (s.n < 0 || s.k < 0 || s.k > s.n) return {false, "(a)", "need n >= k >= 0"};
    if (s.x.rows != s.n || s.x.cols != s.n) return {false, "(d)", "x is not n x n"};
    if (s.W.ambient != s.n || s.W.dim() != s.k)
        return {false, "(e)", "W is not a k-dimensional subspace of field^n"};
    for (int i = 0; i < s.n; ++i)
        for (int j = 0; j <= i; ++j)
            if (!is_zero(s.x.at(i, j)))
                return {false, "(d)", "x does not stabilize the flag with zero diagonal"};
    if (!(s.x * s.x).is_zero_matrix()) return {false, "(d)", "x^2 != 0"};
    Subspace<K> im = image(s.x);
    Subspace<K> ker = kernel(s.x);
    if (!s.W.contains(im)) return {false, "(e)", "im x not inside W"};
    if (!ker.contains(s.W)) return {false, "(e)", "W not inside ker x"};
    if (static_cast<int>(s.J.size()) != s.k) return {false, "(f)", "|J| != k"};
    for (int p : s.J)
        if (p < 1 || p > s.n) return {false, "(f)", "J not inside {1..n}"};
    return {};
}

namespace detail {

template <class K>
bool is_coordinate_subspace(const Subspace<K>& c, const Matrix<K>& basis) {
    int hits = 0;
    for (int p = 0; p < basis.cols; ++p)
        if (c.contains(basis.col(p))) ++hits;
    return hits == c.dim();
}

/// The induction of the adapted-basis construction, on the prefix V_m. The
/// chain must be an increasing sequence of subspaces of V_m squeezed between
/// im(x|V_m) and ker(x|V_m); all of them become coordinate subspaces.
template <class K>
void adapted_basis_rec(const Matrix<K>& x, int m, const std::vector<Subspace<K>>& chain,
                       const K& one, std::vector<std::vector<K>>& cols) {
    if (m == 0) return;
    int n = x.rows;
    Subspace<K> prefix_m1 = coordinate_prefix(n, m - 1, one);
    Subspace<K> im_m = image_on_prefix(x, m);
    Subspace<K> ker_m = intersect(kernel(x), coordinate_prefix(n, m, one));

    std::vector<Subspace<K>> full_chain;
    full_chain.push_back(im_m);
    for (const Subspace<K>& c : chain) full_chain.push_back(c);
    full_chain.push_back(ker_m);

    std::vector<Subspace<K>> sub_chain;
    for (const Subspace<K>& c : full_chain) sub_chain.push_back(intersect(c, prefix_m1));
    adapted_basis_rec(x, m - 1, sub_chain, one, cols);

    std::vector<K> em;
    if (prefix_m1.contains(ker_m)) {
        // x maps V_m onto strictly more than x(V_{m-1}): pick a basis vector
        // e_p of im(x|V_m) outside x(V_{m-1}) and a canonical preimage in V_m
        Subspace<K> im_m1 = image_on_prefix(x, m - 1);
        int p = -1;
        for (int t = 0; t < m - 1; ++t)
            if (im_m.contains(cols[t]) && !im_m1.contains(cols[t])) {
                p = t;
                break;
            }
        if (p < 0) throw std::logic_error("adapted_basis: no pivot vector in im x");
        Matrix<K> xm(n, m);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) xm.at(i, j) = x.at(i, j);
        auto v = solve_preimage(xm, cols[p]);
        if (!v) throw std::logic_error("adapted_basis: preimage solve failed");
        em.assign(n, K{});
        for (int j = 0; j < m; ++j) em[j] = (*v)[j];
    } else {
        // smallest chain member sticking out of V_{m-1}; take its
        // smallest-pivot basis vector outside V_{m-1}
        const Subspace<K>* target = nullptr;
        for (const Subspace<K>& c : full_chain)
            if (!prefix_m1.contains(c)) {
                target = &c;
                break;
            }
        for (int r = 0; r < target->basis.rows; ++r)
            if (!is_zero(target->basis.at(r, m - 1))) {
                em = target->basis.row(r);
                break;
            }
        if (em.empty()) throw std::logic_error("adapted_basis: no vector outside V_{m-1}");
    }
    cols.push_back(std::move(em));
}

}  // namespace detail

/// Basis e_1..e_n (as matrix columns) with V_p = span(e_1..e_p), x(e_p)
/// equal to zero or an earlier basis vector, and im x, ker x and every chain
/// member realized as coordinate subspaces.
template <class K>
Matrix<K> adapted_basis_chain(const Matrix<K>& x, const std::vector<Subspace<K>>& chain,
                              const K& one) {
    int n = x.rows;
    std::vector<std::vector<K>> cols;
    detail::adapted_basis_rec(x, n, chain, one, cols);
    Matrix<K> e(n, n);
    for (int c = 0; c < n; ++c)
        for (int i = 0; i < n; ++i) e.at(i, c) = cols[c][i];

    // postconditions (l)-(n)
    for (int c = 0; c < n; ++c) {
        if (is_zero(e.at(c, c))) throw std::logic_error("adapted_basis: (l) fails");
        for (int i = c + 1; i < n; ++i)
            if (!is_zero(e.at(i, c))) throw std::logic_error("adapted_basis: (l) fails");
    }
    for (int c = 0; c < n; ++c) {
        std::vector<K> xe = x.apply(e.col(c));
        bool good = true;
        for (const K& v : xe) good = good && is_zero(v);
        for (int q = 0; q < c && !good; ++q) {
            good = true;
            std::vector<K> eq = e.col(q);
            for (int i = 0; i < n; ++i) good = good && xe[i] == eq[i];
        }
        if (!good) throw std::logic_error("adapted_basis: (m) fails");
    }
    std::vector<Subspace<K>> to_check{image(x), kernel(x)};
    for (const Subspace<K>& c : chain) to_check.push_back(c);
    for (const Subspace<K>& c : to_check)
        if (!detail::is_coordinate_subspace(c, e))
            throw std::logic_error("adapted_basis: (n) fails");
    return e;
}

template <class K>
Matrix<K> adapted_basis(const FiltrationSetup<K>& s) {
    auto v = validate_setup(s);
    if (!v.ok) throw std::invalid_argument("adapted_basis: invalid setup " + v.item + ": " +
                                           v.message);
    return adapted_basis_chain(s.x, std::vector<Subspace<K>>{s.W}, s.one());
}

/// Box diagram: columns are pairs (top p, bottom q) with x(e_p) = e_q,
/// isolated boxes hold the remaining indices, gray boxes are those whose
/// basis vector lies in W.
struct Diagram {
    int n = 0;
    std::vector<std::pair<int, int>> columns;  // (top, bottom), 1-based
    std::vector<int> isolated;
    std::set<int> gray;  // K

    bool is_top(int p) const {
        for (auto [t, b] : columns)
            if (t == p) return true;
        return false;
    }
    int bottom_of(int p) const {
        for (auto [t, b] : columns)
            if (t == p) return b;
        throw std::invalid_argument("Diagram: not a top index");
    }
};

template <class K>
Diagram build_diagram(const FiltrationSetup<K>& s, const Matrix<K>& e) {
    Diagram d;
    d.n = s.n;
    std::set<int> bottoms;
    for (int c = 0; c < s.n; ++c) {
        std::vector<K> xe = s.x.apply(e.col(c));
        bool zero = true;
        for (const K& v : xe) zero = zero && is_zero(v);
        if (zero) continue;
        int q = -1;
        for (int t = 0; t < c && q < 0; ++t) {
            bool eq = true;
            std::vector<K> et = e.col(t);
            for (int i = 0; i < s.n; ++i) eq = eq && xe[i] == et[i];
            if (eq) q = t;
        }
        if (q < 0) throw std::invalid_argument("build_diagram: basis violates (m)");
        d.columns.emplace_back(c + 1, q + 1);
        bottoms.insert(q + 1);
    }
    for (int p = 1; p <= s.n; ++p)
        if (!bottoms.count(p) && !d.is_top(p)) d.isolated.push_back(p);
    for (int p = 1; p <= s.n; ++p)
        if (s.W.contains(e.col(p - 1))) d.gray.insert(p);
    // structural sanity: bottoms gray, tops white, |gray| = k
    for (auto [t, b] : d.columns) {
        if (!d.gray.count(b)) throw std::logic_error("build_diagram: column bottom not gray");
        if (d.gray.count(t)) throw std::logic_error("build_diagram: column top not white");
    }
    if (static_cast<int>(d.gray.size()) != s.k)
        throw std::logic_error("build_diagram: |gray| != k");
    return d;
}

/// (A): every p in J is a column top or gray.
inline bool condition_A(const Diagram& d, const std::set<int>& J) {
    for (int p : J)
        if (!d.is_top(p) && !d.gray.count(p)) return false;
    return true;
}

/// The combinatorial recipe for the integral: zero on an isolated white box
/// in J or a doubly-hit column, otherwise (-1)^{|J \ K|}.
inline int recipe_value(const Diagram& d, const std::set<int>& J) {
    for (int r : d.isolated)
        if (J.count(r) && !d.gray.count(r)) return 0;
    for (auto [t, b] : d.columns)
        if (J.count(t) && J.count(b)) return 0;
    int nout = 0;
    for (int p : J)
        if (!d.gray.count(p)) ++nout;
    return nout % 2 ? -1 : 1;
}

/// Duality: reversed-dual coordinates turn the orthogonal flag back into the
/// standard one; x becomes R x^T R, W its orthogonal, J the reflected
/// complement.
template <class K>
FiltrationSetup<K> twist(const FiltrationSetup<K>& s) {
    FiltrationSetup<K> t;
    t.n = s.n;
    t.k = s.n - s.k;
    t.field = s.field;
    t.x = Matrix<K>(s.n, s.n);
    for (int i = 0; i < s.n; ++i)
        for (int j = 0; j < s.n; ++j) t.x.at(i, j) = s.x.at(s.n - 1 - j, s.n - 1 - i);
    Subspace<K> perp = kernel(s.W.basis);  // forms vanishing on W
    Matrix<K> rev(perp.basis.rows, s.n);
    for (int r = 0; r < perp.basis.rows; ++r)
        for (int j = 0; j < s.n; ++j) rev.at(r, j) = perp.basis.at(r, s.n - 1 - j);
    t.W = Subspace<K>::from_rows(s.n, std::move(rev));
    for (int p = 1; p <= s.n; ++p)
        if (!s.J.count(p)) t.J.insert(s.n + 1 - p);
    auto v = validate_setup(t);
    if (!v.ok) throw std::logic_error("twist: produced invalid setup " + v.item);
    return t;
}

/// Deterministic fixture realizing a diagram: x sends each column top to its
/// bottom, W is the span of the gray coordinates.
template <class K>
FiltrationSetup<K> setup_from_diagram(const Diagram& d, const std::set<int>& J,
                                      const FieldSpec& field) {
    FiltrationSetup<K> s;
    s.n = d.n;
    s.k = static_cast<int>(d.gray.size());
    s.field = field;
    s.x = Matrix<K>(d.n, d.n);
    K one;
    if constexpr (std::is_same_v<K, Fp>)
        one = Fp(1, field.characteristic);
    else
        one = K(1);
    for (auto [t, b] : d.columns) {
        if (b >= t) throw std::invalid_argument("setup_from_diagram: bottom must be below top");
        s.x.at(b - 1, t - 1) = one;
    }
    s.W = coordinate_span(d.n, d.gray, one);
    s.J = J;
    return s;
}

/// Setup reduction mod p (for the finite-field proxy).
inline FiltrationSetup<Fp> reduce_setup_mod(const FiltrationSetup<Rational>& s, std::uint64_t p) {
    FiltrationSetup<Fp> r;
    r.n = s.n;
    r.k = s.k;
    r.field = FieldSpec::prime(p);
    r.x = Matrix<Fp>(s.n, s.n);
    for (size_t i = 0; i < s.x.data.size(); ++i) r.x.data[i] = reduce_mod(s.x.data[i], p);
    Matrix<Fp> rows(s.W.basis.rows, s.n);
    for (size_t i = 0; i < s.W.basis.data.size(); ++i)
        rows.data[i] = reduce_mod(s.W.basis.data[i], p);
    r.W = Subspace<Fp>::from_rows(s.n, std::move(rows));
    if (r.W.dim() != s.k) throw std::domain_error("bad prime: W degenerates mod p");
    r.J = s.J;
    return r;
}

inline std::vector<std::uint64_t> setup_denominator_primes(const FiltrationSetup<Rational>& s) {
    std::vector<std::uint64_t> bad;
    auto scan = [&](const Rational& x) {
        Integer den = boost::multiprecision::denominator(x);
        for (std::uint64_t p = 2; Integer(p) <= den; ++p)
            if (is_prime(p) && den % Integer(p) == 0) {
                bad.push_back(p);
                while (den % Integer(p) == 0) den /= Integer(p);
            }
    };
    for (const Rational& x : s.x.data) scan(x);
    for (const Rational& x : s.W.basis.data) scan(x);
    return bad;
}

/// ASCII rendering: columns first (two stacked boxes), then isolated boxes;
/// gray marked with '#', white with ' '.
inline std::string render_diagram(const Diagram& d) {
    std::ostringstream top, bot;
    auto box = [](std::ostringstream& os, int idx, bool gray) {
        os << '[' << (gray ? '#' : ' ') << idx << (gray ? '#' : ' ') << ']';
    };
    for (auto [t, b] : d.columns) {
        box(top, t, d.gray.count(t) > 0);
        box(bot, b, d.gray.count(b) > 0);
        top << ' ';
        bot << ' ';
    }
    for (int r : d.isolated) {
        for (size_t i = 0; i < std::to_string(r).size() + 4; ++i) top << ' ';
        top << ' ';
        box(bot, r, d.gray.count(r) > 0);
        bot << ' ';
    }
    return top.str() + "\n" + bot.str() + "\n";
}

}  // namespace prepchi
