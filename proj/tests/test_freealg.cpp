#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prepchi/freealg.hpp"

#include <random>

using namespace prepchi;

namespace {

QuiverGraph a2() { return build_double_quiver({1, 2}, {{"e", 1, 2}}); }

FreeElement random_element(std::mt19937& rng, int nterms, int maxlen) {
    FreeElement a;
    for (int t = 0; t < nterms; ++t) {
        Word w;
        int len = static_cast<int>(rng() % (maxlen + 1));
        for (int s = 0; s < len; ++s) w.push_back(1 + static_cast<int>(rng() % 2));
        a.add_term(w, Rational(static_cast<int>(rng() % 7) - 3));
    }
    return a;
}

bool homogeneous(const FreeElement& a, const WeightVector& nu) {
    for (const auto& [w, c] : a.terms)
        if (!(weight(w) == nu)) return false;
    return true;
}

}  // namespace

TEST_CASE("word weights") {
    CHECK(weight(Word{}) == WeightVector{});
    WeightVector nu;
    nu.add(1, 2);
    nu.add(2, 1);
    CHECK(weight(Word{1, 2, 1}) == nu);
}

TEST_CASE("FWord weight through expansion") {
    auto cartan = cartan_matrix(star_quiver(3));
    FWord u;
    u.base_vertex = 0;
    u.factors = {{1, 1}, {2, 0}, {3, 1}};
    WeightVector nu = u.weight();
    CHECK(nu.at(0) == 2);
    CHECK(nu.at(1) == 1);
    CHECK(nu.at(2) == 1);
    CHECK(nu.at(3) == 1);
    CHECK(homogeneous(expand_fword(u, cartan), nu));
}

TEST_CASE("multiply: concatenation, bilinearity, associativity, grading") {
    FreeElement ei = FreeElement::generator(1), ej = FreeElement::generator(2);
    FreeElement p = multiply(ei, ej);
    CHECK(p.terms.size() == 1);
    CHECK(p.terms.at(Word{1, 2}) == 1);

    FreeElement q = multiply(ei - ej, ei);
    CHECK(q.terms.at(Word{1, 1}) == 1);
    CHECK(q.terms.at(Word{2, 1}) == -1);

    std::mt19937 rng(3);
    for (int t = 0; t < 10; ++t) {
        FreeElement a = random_element(rng, 3, 3);
        FreeElement b = random_element(rng, 3, 3);
        FreeElement c = random_element(rng, 3, 3);
        CHECK(multiply(a, multiply(b, c)) == multiply(multiply(a, b), c));
    }

    // weight additivity on homogeneous pieces
    FreeElement f = f_gen(1, 2, 2);
    WeightVector nu;
    nu.add(1, 2);
    nu.add(2, 1);
    CHECK(homogeneous(f, nu));
    WeightVector two_nu = nu + nu;
    CHECK(homogeneous(multiply(f, f), two_nu));
}

TEST_CASE("ad_power and the derivation law") {
    FreeElement ej = FreeElement::generator(2);
    CHECK(ad_power(1, 0, ej) == ej);
    FreeElement d1 = ad_power(1, 1, ej);
    FreeElement expect = multiply(FreeElement::generator(1), ej) -
                         multiply(ej, FreeElement::generator(1));
    CHECK(d1 == expect);

    std::mt19937 rng(5);
    for (int t = 0; t < 10; ++t) {
        FreeElement a = random_element(rng, 3, 3);
        FreeElement b = random_element(rng, 3, 3);
        FreeElement lhs = ad_power(1, 1, multiply(a, b));
        FreeElement rhs = multiply(ad_power(1, 1, a), b) + multiply(a, ad_power(1, 1, b));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("f_gen matches the divided derivation powers") {
    for (int m = 0; m <= 3; ++m) {
        Rational c = (m % 2 ? Rational(-1) : Rational(1)) / factorial(m);
        CHECK(f_gen(1, 2, m) == ad_power(1, m, FreeElement::generator(2)).scaled(c));
    }
}

TEST_CASE("f_gen explicit expansions") {
    CHECK(f_gen(1, 2, 0) == FreeElement::generator(2));

    FreeElement f1;
    f1.add_term({2, 1}, 1);
    f1.add_term({1, 2}, -1);
    CHECK(f_gen(1, 2, 1) == f1);

    FreeElement f2;
    f2.add_term({2, 1, 1}, Rational(1) / 2);
    f2.add_term({1, 2, 1}, -1);
    f2.add_term({1, 1, 2}, Rational(1) / 2);
    CHECK(f_gen(1, 2, 2) == f2);
}

TEST_CASE("Serre nesting D_i f_{i,j,m} = -(m+1) f_{i,j,m+1}") {
    for (int m = 0; m <= 3; ++m)
        CHECK(ad_power(1, 1, f_gen(1, 2, m)) == f_gen(1, 2, m + 1).scaled(Rational(-(m + 1))));
}

TEST_CASE("serre_element") {
    auto cartan = cartan_matrix(a2());
    CHECK(cartan.a(1, 2) == -1);
    CHECK(serre_element(cartan, 1, 2) == f_gen(1, 2, 2));

    // disconnected pair: a_ij = 0, the Serre element is the commutator
    auto g = build_double_quiver({1, 2, 3}, {{"e", 1, 3}});
    auto c2 = cartan_matrix(g);
    CHECK(c2.a(1, 2) == 0);
    FreeElement comm;
    comm.add_term({2, 1}, 1);
    comm.add_term({1, 2}, -1);
    CHECK(serre_element(c2, 1, 2) == comm);
}

TEST_CASE("expand_fword") {
    auto cartan = cartan_matrix(a2());
    FWord single;
    single.base_vertex = 1;
    single.factors = {{2, 0}};
    CHECK(expand_fword(single, cartan) == FreeElement::generator(2));

    FWord u;
    u.base_vertex = 1;
    u.factors = {{2, 1}};
    CHECK(expand_fword(u, cartan) == f_gen(1, 2, 1));

    // two factors expand to the product with factor s=1 rightmost
    auto star = cartan_matrix(star_quiver(2));
    FWord v;
    v.base_vertex = 0;
    v.factors = {{1, 1}, {2, 1}};
    CHECK(expand_fword(v, star) == multiply(f_gen(0, 2, 1), f_gen(0, 1, 1)));
    CHECK(homogeneous(expand_fword(v, star), v.weight()));

    FWord bad;
    bad.base_vertex = 1;
    bad.factors = {{2, 2}};
    CHECK_THROWS(expand_fword(bad, cartan));
}

TEST_CASE("reflect_fword on single factors") {
    auto cartan = cartan_matrix(a2());
    FWord f0;
    f0.base_vertex = 1;
    f0.factors = {{2, 0}};
    CHECK(reflect_fword(f0, cartan) == f_gen(1, 2, 1));

    FWord f1;
    f1.base_vertex = 1;
    f1.factors = {{2, 1}};
    CHECK(reflect_fword(f1, cartan) == FreeElement::generator(2).scaled(-1));
}

TEST_CASE("reflect twice multiplies by (-1)^(a_ij) per factor") {
    auto cartan = cartan_matrix(star_quiver(3));
    FWord u;
    u.base_vertex = 0;
    u.factors = {{1, 1}, {2, 0}, {3, 1}};
    FWord tu = reflected_fword(u, cartan);
    int sign_of_u = 1;  // T(u) = sign_of_u * (monomial tu)
    for (auto [j, m] : u.factors) {
        (void)j;
        if (m % 2) sign_of_u = -sign_of_u;
    }
    FreeElement twice = reflect_fword(tu, cartan).scaled(Rational(sign_of_u));
    // T(T(u)) = prod_s (-1)^{a_{0 j_s}} u = -u for three rays with a = -1
    CHECK(twice == expand_fword(u, cartan).scaled(Rational(-1)));
}

TEST_CASE("leibniz_expand basics") {
    FreeElement w0 = leibniz_expand(0, {1, 2}, 0);
    CHECK(w0 == multiply(FreeElement::generator(1), FreeElement::generator(2)));

    CHECK(leibniz_expand(0, {1}, 1) == f_gen(0, 1, 1));
    CHECK(leibniz_expand(0, {1}, 1) == leibniz_raw(0, {1}, 1));

    // m <= 1: subset expansion agrees with the raw derivation power
    for (int len = 1; len <= 4; ++len) {
        Word seg;
        for (int t = 0; t < len; ++t) seg.push_back(t + 1);
        for (int m = 0; m <= 1; ++m)
            CHECK(leibniz_expand(0, seg, m) == leibniz_raw(0, seg, m));
    }
}

TEST_CASE("g''_s = T_0(g'_s) on star segments up to length 4") {
    for (int len = 1; len <= 4; ++len) {
        auto cartan = cartan_matrix(star_quiver(len));
        Word seg;
        for (int t = 0; t < len; ++t) seg.push_back(len - t);  // e_{q_s} ... e_{p_s}
        for (int m = 0; m <= len; ++m) {
            // g' via subsets of FWord monomials, reflected term by term
            FreeElement t0_gprime;
            std::vector<int> subset(m);
            for (int i = 0; i < m; ++i) subset[i] = i;
            auto advance = [&]() -> bool {
                int i = m - 1;
                while (i >= 0 && subset[i] == len - m + i) --i;
                if (i < 0) return false;
                ++subset[i];
                for (int j = i + 1; j < m; ++j) subset[j] = subset[j - 1] + 1;
                return true;
            };
            do {
                std::vector<bool> in(len, false);
                for (int pos : subset) in[pos] = true;
                FWord mono;
                mono.base_vertex = 0;
                // product order v_{q_s} ... v_{p_s}: leftmost factor is s = r,
                // i.e. FWord factors are listed rightmost-first
                for (int t = len - 1; t >= 0; --t) mono.factors.emplace_back(seg[t], in[t] ? 1 : 0);
                t0_gprime = t0_gprime + reflect_fword(mono, cartan);
            } while (m > 0 && advance());

            FreeElement gsecond =
                leibniz_expand(0, seg, len - m).scaled(Rational(m % 2 ? -1 : 1));
            CHECK(t0_gprime == gsecond);
        }
    }
}

TEST_CASE("leibniz expansion reproduces the sum of expanded FWord monomials") {
    int len = 3, m = 2;
    auto cartan = cartan_matrix(star_quiver(len));
    Word seg{3, 2, 1};
    FreeElement viaf;
    for (int a = 0; a < len; ++a)
        for (int b = a + 1; b < len; ++b) {
            FWord mono;
            mono.base_vertex = 0;
            for (int t = len - 1; t >= 0; --t)
                mono.factors.emplace_back(seg[t], (t == a || t == b) ? 1 : 0);
            viaf = viaf + expand_fword(mono, cartan);
        }
    CHECK(leibniz_expand(0, seg, m) == viaf);
}

TEST_CASE("text forms") {
    FWord u;
    u.base_vertex = 1;
    u.factors = {{2, 1}, {3, 0}};
    CHECK(to_string(u) == "1 | 2:1, 3:0");
    FreeElement a;
    a.add_term({1, 2}, Rational(-5) / 2);
    CHECK(to_string(a) == "-5/2 * 1.2");
}
