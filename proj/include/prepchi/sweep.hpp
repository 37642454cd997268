#pragma once

#include "prepchi/integral.hpp"

#include <random>

namespace prepchi {

/// Visit every diagram shape with the given box count (partial matchings
/// with bottom < top), every gray set containing the bottoms and avoiding
/// the tops, and every J of the matching size.
inline void for_each_small_setup(
    int max_n, const std::function<void(const Diagram&, const std::set<int>&)>& fn) {
    for (int n = 1; n <= max_n; ++n) {
        std::vector<Diagram> shapes;
        std::function<void(std::vector<int>, Diagram)> match = [&](std::vector<int> rest,
                                                                   Diagram cur) {
            if (rest.empty()) {
                cur.n = n;
                shapes.push_back(cur);
                return;
            }
            int b = rest[0];
            std::vector<int> tail(rest.begin() + 1, rest.end());
            Diagram iso = cur;
            iso.isolated.push_back(b);
            match(tail, iso);
            for (size_t i = 0; i < tail.size(); ++i) {
                Diagram next = cur;
                next.columns.emplace_back(tail[i], b);
                std::vector<int> left;
                for (size_t j = 0; j < tail.size(); ++j)
                    if (j != i) left.push_back(tail[j]);
                match(left, next);
            }
        };
        std::vector<int> all;
        for (int i = 1; i <= n; ++i) all.push_back(i);
        match(all, Diagram{});

        for (Diagram& d : shapes) {
            std::set<int> bottoms;
            for (auto [t, b] : d.columns) bottoms.insert(b);
            int ni = static_cast<int>(d.isolated.size());
            for (int mask = 0; mask < (1 << ni); ++mask) {
                d.gray = bottoms;
                for (int i = 0; i < ni; ++i)
                    if (mask & (1 << i)) d.gray.insert(d.isolated[i]);
                int k = static_cast<int>(d.gray.size());
                std::vector<std::set<int>> js;
                std::function<void(int, std::set<int>)> gen = [&](int i, std::set<int> cur) {
                    if (static_cast<int>(cur.size()) == k) {
                        js.push_back(cur);
                        return;
                    }
                    if (i > n || static_cast<int>(cur.size()) + (n - i + 1) < k) return;
                    gen(i + 1, cur);
                    cur.insert(i);
                    gen(i + 1, cur);
                };
                gen(1, {});
                for (const std::set<int>& J : js) fn(d, J);
            }
        }
    }
}

struct GenFormCase {
    std::string label;
    LambdaModule<Rational> module;
    int vertex = 0;
    FWord u;
    Rational pinned_value;  // expected LHS, when known
    bool has_pinned = false;
};

namespace detail {

/// Unimodular vertex-wise base change from integer shears.
inline LambdaModule<Rational> shear_conjugate(const LambdaModule<Rational>& m,
                                              std::mt19937& rng) {
    std::map<int, Matrix<Rational>> change;
    for (auto [v, d] : m.dims) {
        if (d == 0) continue;
        Matrix<Rational> p = Matrix<Rational>::identity(d, Rational(1));
        for (int t = 0; t < 3; ++t) {
            int a = static_cast<int>(rng() % d), b = static_cast<int>(rng() % d);
            if (a == b) continue;
            Matrix<Rational> shear = Matrix<Rational>::identity(d, Rational(1));
            shear.at(a, b) = Rational(static_cast<int>(rng() % 5) - 2);
            p = shear * p;
        }
        change[v] = std::move(p);
    }
    return conjugate(m, change);
}

/// A module with the given dimensions whose maps all point away from the
/// given vertex (in-maps zero), with out-blocks chosen of full column rank.
inline LambdaModule<Rational> outward_module(const QuiverGraph& g, int vertex,
                                             const std::map<int, int>& dims) {
    LambdaModule<Rational> m;
    m.graph = g;
    m.field = FieldSpec::rationals();
    for (int v : g.vertices) {
        auto it = dims.find(v);
        m.dims[v] = it == dims.end() ? 0 : it->second;
    }
    for (const Arrow& h : g.arrows) m.maps[h.id] = Matrix<Rational>(m.dims[h.target], m.dims[h.source]);
    // spread unit entries across the out-blocks so m_out has full column rank
    int col = 0;
    for (const Arrow& h : g.arrows) {
        if (h.source != vertex || h.eps < 0) continue;
        Matrix<Rational>& blk = m.maps[h.id];
        for (int r = 0; r < blk.rows && col < m.dims[vertex]; ++r) blk.at(r, col++) = 1;
    }
    // fall back on reusing rows if the rays are too small
    if (col < m.dims[vertex])
        throw std::invalid_argument("outward_module: ray dimensions too small for injectivity");
    return m;
}

}  // namespace detail

/// The reflection-identity suite: (module, vertex, f-word) triples over the
/// A2, A3 and 3-ray star graphs, all with injective out-map at the vertex,
/// plus unimodular conjugates of each.
inline std::vector<GenFormCase> genform_suite(std::uint64_t seed = 20260823) {
    std::vector<GenFormCase> cases;
    QuiverGraph a2 = build_double_quiver({1, 2}, {{"e", 1, 2}});
    QuiverGraph a3 = build_double_quiver({1, 2, 3}, {{"a", 2, 1}, {"b", 2, 3}});
    QuiverGraph st = star_quiver(3);

    auto add = [&](std::string label, LambdaModule<Rational> m, int i, FWord u) {
        cases.push_back(GenFormCase{std::move(label), std::move(m), i, std::move(u), 0, false});
    };

    // A2 extension, u = f_{1,2,1}: the pinned value -1
    {
        LambdaModule<Rational> ext = detail::outward_module(a2, 1, {{1, 1}, {2, 1}});
        GenFormCase c{"a2-ext", ext, 1, FWord{1, {{2, 1}}}, Rational(-1), true};
        cases.push_back(c);
    }
    add("a2-s2", simple_module<Rational>(a2, FieldSpec::rationals(), 2), 1, FWord{1, {{2, 0}}});
    add("a2-ext-plus-s2",
        direct_sum(detail::outward_module(a2, 1, {{1, 1}, {2, 1}}),
                   simple_module<Rational>(a2, FieldSpec::rationals(), 2)),
        1, FWord{1, {{2, 1}, {2, 0}}});
    add("a2-ext-sq",
        direct_sum(detail::outward_module(a2, 1, {{1, 1}, {2, 1}}),
                   detail::outward_module(a2, 1, {{1, 1}, {2, 1}})),
        1, FWord{1, {{2, 1}, {2, 1}}});

    add("a3-middle-left", detail::outward_module(a3, 2, {{1, 1}, {2, 1}, {3, 1}}), 2,
        FWord{2, {{1, 1}, {3, 0}}});
    add("a3-middle-right", detail::outward_module(a3, 2, {{1, 1}, {2, 1}, {3, 1}}), 2,
        FWord{2, {{1, 0}, {3, 1}}});
    add("a3-ends-only",
        direct_sum(simple_module<Rational>(a3, FieldSpec::rationals(), 1),
                   simple_module<Rational>(a3, FieldSpec::rationals(), 3)),
        2, FWord{2, {{1, 0}, {3, 0}}});

    add("star-one-ray", detail::outward_module(st, 0, {{0, 1}, {1, 1}, {2, 1}}), 0,
        FWord{0, {{1, 1}, {2, 0}}});
    add("star-other-ray", detail::outward_module(st, 0, {{0, 1}, {1, 1}, {2, 1}}), 0,
        FWord{0, {{1, 0}, {2, 1}}});
    add("star-three-rays", detail::outward_module(st, 0, {{0, 1}, {1, 1}, {2, 1}, {3, 1}}), 0,
        FWord{0, {{1, 1}, {2, 0}, {3, 0}}});
    add("star-center-2", detail::outward_module(st, 0, {{0, 2}, {1, 1}, {2, 1}}), 0,
        FWord{0, {{1, 1}, {2, 1}}});

    // two unimodular conjugates of each base case
    std::mt19937 rng(static_cast<std::uint32_t>(seed));
    size_t base = cases.size();
    for (size_t i = 0; i < base; ++i)
        for (int t = 0; t < 2; ++t) {
            GenFormCase c = cases[i];
            c.label += "-conj" + std::to_string(t + 1);
            c.module = detail::shear_conjugate(c.module, rng);
            cases.push_back(std::move(c));
        }
    return cases;
}

}  // namespace prepchi
