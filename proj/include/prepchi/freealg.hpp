#pragma once

#include "prepchi/quiver.hpp"

#include <map>
#include <sstream>

namespace prepchi {

/// nu = sum nu_i alpha_i with nonnegative coordinates.
struct WeightVector {
    std::map<int, int> coordinates;

    int at(int i) const {
        auto it = coordinates.find(i);
        return it == coordinates.end() ? 0 : it->second;
    }
    void add(int i, int m) {
        if (m == 0) return;
        coordinates[i] += m;
        if (coordinates[i] == 0) coordinates.erase(i);
    }
    friend WeightVector operator+(WeightVector a, const WeightVector& b) {
        for (auto [i, m] : b.coordinates) a.add(i, m);
        return a;
    }
    friend bool operator==(const WeightVector& a, const WeightVector& b) {
        return a.coordinates == b.coordinates;
    }
    int total() const {
        int t = 0;
        for (auto [i, m] : coordinates) t += m;
        return t;
    }
};

/// A monomial e_{i_1} ... e_{i_n} in the free algebra.
using Word = std::vector<int>;

inline WeightVector weight(const Word& w) {
    WeightVector nu;
    for (int i : w) nu.add(i, 1);
    return nu;
}

/// Exact element of the free associative algebra on the e_i over Q.
struct FreeElement {
    std::map<Word, Rational> terms;  // no zero coefficients stored

    static FreeElement zero() { return FreeElement{}; }
    static FreeElement generator(int i) {
        FreeElement e;
        e.terms[{i}] = 1;
        return e;
    }
    static FreeElement one() {
        FreeElement e;
        e.terms[{}] = 1;
        return e;
    }

    void add_term(const Word& w, const Rational& c) {
        if (is_zero(c)) return;
        Rational& slot = terms[w];
        slot += c;
        if (is_zero(slot)) terms.erase(w);
    }

    bool is_zero_element() const { return terms.empty(); }

    friend FreeElement operator+(FreeElement a, const FreeElement& b) {
        for (const auto& [w, c] : b.terms) a.add_term(w, c);
        return a;
    }
    friend FreeElement operator-(FreeElement a, const FreeElement& b) {
        for (const auto& [w, c] : b.terms) a.add_term(w, -c);
        return a;
    }
    FreeElement scaled(const Rational& c) const {
        FreeElement out;
        if (is_zero(c)) return out;
        for (const auto& [w, k] : terms) out.terms[w] = k * c;
        return out;
    }
    friend bool operator==(const FreeElement& a, const FreeElement& b) {
        return a.terms == b.terms;
    }
};

/// Bilinear concatenation product.
inline FreeElement multiply(const FreeElement& a, const FreeElement& b) {
    FreeElement out;
    for (const auto& [wa, ca] : a.terms)
        for (const auto& [wb, cb] : b.terms) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            out.add_term(w, ca * cb);
        }
    return out;
}

/// D_i^m(a) where D_i = ad(e_i).
inline FreeElement ad_power(int i, int m, FreeElement a) {
    FreeElement ei = FreeElement::generator(i);
    for (int s = 0; s < m; ++s) a = multiply(ei, a) - multiply(a, ei);
    return a;
}

inline Rational factorial(int n) {
    Rational f = 1;
    for (int s = 2; s <= n; ++s) f *= s;
    return f;
}

/// f_{i,j,m} = sum_{p+q=m} (-1)^p e_i^p/p! e_j e_i^q/q!
inline FreeElement f_gen(int i, int j, int m) {
    if (i == j) throw std::invalid_argument("f_gen: i and j must differ");
    FreeElement out;
    for (int p = 0; p <= m; ++p) {
        int q = m - p;
        Word w(static_cast<size_t>(p), i);
        w.push_back(j);
        w.insert(w.end(), static_cast<size_t>(q), i);
        Rational c = (p % 2 ? Rational(-1) : Rational(1)) / (factorial(p) * factorial(q));
        out.add_term(w, c);
    }
    return out;
}

/// f_{i,j,1-a_ij}, the element that vanishes in the Serre quotient.
inline FreeElement serre_element(const CartanMatrix& cartan, int i, int j) {
    if (i == j) throw std::invalid_argument("serre_element: i and j must differ");
    return f_gen(i, j, 1 - cartan.a(i, j));
}

/// A formal word f_{i,j_r,m_r} ... f_{i,j_1,m_1}; factors[0] is the
/// rightmost factor.
struct FWord {
    int base_vertex = 0;
    std::vector<std::pair<int, int>> factors;  // (j_s, m_s), s = 1..r

    void check(const CartanMatrix& cartan) const {
        for (auto [j, m] : factors) {
            if (j == base_vertex)
                throw std::invalid_argument("FWord: factor vertex equals base vertex");
            if (m < 0 || m > -cartan.a(base_vertex, j))
                throw std::invalid_argument("FWord: multiplicity out of range [0, -a_ij]");
        }
    }

    WeightVector weight() const {
        WeightVector nu;
        for (auto [j, m] : factors) {
            nu.add(base_vertex, m);
            nu.add(j, 1);
        }
        return nu;
    }
};

inline FreeElement expand_fword(const FWord& u, const CartanMatrix& cartan) {
    u.check(cartan);
    FreeElement out = FreeElement::one();
    // factor s = 1 is rightmost: multiply from the left as s grows
    for (auto [j, m] : u.factors) out = multiply(f_gen(u.base_vertex, j, m), out);
    return out;
}

/// T_i on an f-monomial: each factor (j,m) becomes (j, -a_ij - m) with an
/// overall sign prod (-1)^(m_s).
inline FreeElement reflect_fword(const FWord& u, const CartanMatrix& cartan) {
    u.check(cartan);
    FWord t;
    t.base_vertex = u.base_vertex;
    int sign = 1;
    for (auto [j, m] : u.factors) {
        t.factors.emplace_back(j, -cartan.a(u.base_vertex, j) - m);
        if (m % 2) sign = -sign;
    }
    return expand_fword(t, cartan).scaled(Rational(sign));
}

inline FWord reflected_fword(const FWord& u, const CartanMatrix& cartan) {
    FWord t;
    t.base_vertex = u.base_vertex;
    for (auto [j, m] : u.factors)
        t.factors.emplace_back(j, -cartan.a(u.base_vertex, j) - m);
    return t;
}

/// Leibniz expansion of (-1)^m/m! D_base^m(e_{w_1} ... e_{w_l}) with the
/// second derivatives D^2(e_j) removed by the Serre relations: the sum over
/// m-subsets J of the positions of products whose factor at position t is
/// f_{base,w_t,1} when t is in J and e_{w_t} otherwise. Agrees with the raw
/// derivation power exactly for m <= 1 and modulo the Serre ideal in general.
inline FreeElement leibniz_expand(int base, const Word& segment, int m) {
    for (int j : segment)
        if (j == base) throw std::invalid_argument("leibniz_expand: base occurs in segment");
    int l = static_cast<int>(segment.size());
    if (m < 0 || m > l) return FreeElement::zero();
    FreeElement out;
    std::vector<int> subset(m);
    for (int i = 0; i < m; ++i) subset[i] = i;
    auto advance = [&]() -> bool {
        int i = m - 1;
        while (i >= 0 && subset[i] == l - m + i) --i;
        if (i < 0) return false;
        ++subset[i];
        for (int j = i + 1; j < m; ++j) subset[j] = subset[j - 1] + 1;
        return true;
    };
    do {
        std::vector<bool> in(l, false);
        for (int pos : subset) in[pos] = true;
        FreeElement prod = FreeElement::one();
        for (int t = 0; t < l; ++t)
            prod = multiply(prod, in[t] ? f_gen(base, segment[t], 1)
                                        : FreeElement::generator(segment[t]));
        out = out + prod;
    } while (m > 0 && advance());
    return out;
}

/// Raw derivation route (-1)^m/m! D_base^m(e_{w_1} ... e_{w_l}), without
/// any Serre reduction.
inline FreeElement leibniz_raw(int base, const Word& segment, int m) {
    FreeElement w = FreeElement::one();
    for (int j : segment) w = multiply(w, FreeElement::generator(j));
    Rational c = (m % 2 ? Rational(-1) : Rational(1)) / factorial(m);
    return ad_power(base, m, w).scaled(c);
}

inline std::string to_string(const Word& w) {
    std::ostringstream os;
    for (size_t i = 0; i < w.size(); ++i) os << (i ? "." : "") << w[i];
    return os.str();
}

inline std::string to_string(const FreeElement& a) {
    if (a.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : a.terms) {
        os << (first ? "" : " + ") << c.str() << " * " << to_string(w);
        first = false;
    }
    return os.str();
}

inline std::string to_string(const FWord& u) {
    std::ostringstream os;
    os << u.base_vertex << " |";
    for (size_t s = 0; s < u.factors.size(); ++s)
        os << (s ? ", " : " ") << u.factors[s].first << ":" << u.factors[s].second;
    return os.str();
}

}  // namespace prepchi
