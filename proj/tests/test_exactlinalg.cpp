#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prepchi/enumerate.hpp"
#include "prepchi/polynomial.hpp"

#include <random>
#include <set>

using namespace prepchi;

namespace {

Matrix<Rational> rat_matrix(std::initializer_list<std::initializer_list<int>> rows) {
    Matrix<Rational> m(static_cast<int>(rows.size()),
                       rows.size() ? static_cast<int>(rows.begin()->size()) : 0);
    int r = 0;
    for (auto& row : rows) {
        int c = 0;
        for (int v : row) m.at(r, c++) = Rational(v);
        ++r;
    }
    return m;
}

Matrix<Fp> fp_matrix(std::uint64_t p, std::initializer_list<std::initializer_list<int>> rows) {
    Matrix<Fp> m(static_cast<int>(rows.size()),
                 rows.size() ? static_cast<int>(rows.begin()->size()) : 0);
    int r = 0;
    for (auto& row : rows) {
        int c = 0;
        for (int v : row) m.at(r, c++) = Fp(static_cast<std::uint64_t>(((v % (int)p) + (int)p)), p);
        ++r;
    }
    return m;
}

}  // namespace

TEST_CASE("rank_kernel_image basic cases") {
    auto id2 = Matrix<Rational>::identity(2, Rational(1));
    auto rki = rank_kernel_image(id2);
    CHECK(rki.rank == 2);
    CHECK(rki.kernel.dim() == 0);
    CHECK(rki.image == Subspace<Rational>::full(2, Rational(1)));

    Matrix<Rational> z(3, 3);
    auto rkz = rank_kernel_image(z);
    CHECK(rkz.rank == 0);
    CHECK(rkz.kernel == Subspace<Rational>::full(3, Rational(1)));
    CHECK(rkz.image.dim() == 0);

    auto ones = fp_matrix(2, {{1, 1}, {1, 1}});
    auto rko = rank_kernel_image(ones);
    CHECK(rko.rank == 1);
    CHECK(rko.kernel.dim() == 1);
    std::vector<Fp> v{Fp(1, 2), Fp(1, 2)};
    CHECK(rko.kernel.contains(v));
}

TEST_CASE("rank-nullity and canonical form under row permutation") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        int r = 1 + static_cast<int>(rng() % 4), c = 1 + static_cast<int>(rng() % 4);
        Matrix<Rational> m(r, c);
        for (auto& x : m.data) x = Rational(static_cast<int>(rng() % 7) - 3);
        auto a = rank_kernel_image(m);
        CHECK(a.rank + a.kernel.dim() == c);
        // permute rows; image is a subspace of the target so it moves, but
        // rank and kernel are unchanged and Subspace form stays canonical
        Matrix<Rational> perm(r, c);
        std::vector<int> order(r);
        for (int i = 0; i < r; ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) perm.at(i, j) = m.at(order[i], j);
        auto b = rank_kernel_image(perm);
        CHECK(a.rank == b.rank);
        CHECK(a.kernel == b.kernel);
    }
}

TEST_CASE("solve_preimage") {
    auto id2 = Matrix<Rational>::identity(2, Rational(1));
    std::vector<Rational> t{Rational(3), Rational(-5)};
    auto s = solve_preimage(id2, t);
    REQUIRE(s.has_value());
    CHECK(*s == t);

    // m = [[0,1]]: pivot solution with the free coordinate zeroed
    auto m = rat_matrix({{0, 1}});
    auto s2 = solve_preimage(m, {Rational(1)});
    REQUIRE(s2.has_value());
    CHECK((*s2)[0] == Rational(0));
    CHECK((*s2)[1] == Rational(1));

    Matrix<Rational> z(2, 3);
    CHECK(!solve_preimage(z, {Rational(1), Rational(0)}).has_value());
}

TEST_CASE("subspace canonical equality from different spanning sets") {
    auto a = Subspace<Rational>::from_rows(3, rat_matrix({{1, 1, 0}, {0, 1, 1}}));
    auto b = Subspace<Rational>::from_rows(3, rat_matrix({{2, 3, 1}, {-1, 0, 1}, {1, 2, 1}}));
    CHECK(a == b);
    CHECK(a.basis == b.basis);
}

TEST_CASE("subspace sum, intersection, preimage") {
    auto e1 = Subspace<Rational>::from_rows(3, rat_matrix({{1, 0, 0}}));
    auto e12 = Subspace<Rational>::from_rows(3, rat_matrix({{1, 0, 0}, {0, 1, 0}}));
    auto e23 = Subspace<Rational>::from_rows(3, rat_matrix({{0, 1, 0}, {0, 0, 1}}));
    CHECK(sum(e1, e23) == Subspace<Rational>::full(3, Rational(1)));
    auto e2 = intersect(e12, e23);
    CHECK(e2.dim() == 1);
    CHECK(e2.contains({Rational(0), Rational(1), Rational(0)}));

    // preimage of span(e1) under projection onto first two coords
    auto proj = rat_matrix({{1, 0, 0}, {0, 1, 0}});
    auto pre = preimage(proj, Subspace<Rational>::from_rows(2, rat_matrix({{1, 0}})), Rational(1));
    CHECK(pre.dim() == 2);
    CHECK(pre.contains({Rational(1), Rational(0), Rational(0)}));
    CHECK(pre.contains({Rational(0), Rational(0), Rational(1)}));
}

TEST_CASE("quotient and section matrices") {
    auto s = Subspace<Rational>::from_rows(3, rat_matrix({{1, 2, 0}}));
    auto q = quotient_matrix(s, Rational(1));
    CHECK(q.rows == 2);
    CHECK(kernel(q) == s);
    auto sec = section_matrix(s, Rational(1));
    CHECK(q * sec == Matrix<Rational>::identity(2, Rational(1)));
}

TEST_CASE("gaussian binomial") {
    CHECK(gaussian_binomial(2, 1, 2) == 3);
    CHECK(gaussian_binomial(4, 2, 3) == 130);
    CHECK(gaussian_binomial(5, 0, 7) == 1);
    CHECK(gaussian_binomial(5, 5, 7) == 1);
}

TEST_CASE("enumerate_subspaces counts match gaussian binomials") {
    for (std::uint64_t q : {2ull, 3ull, 5ull}) {
        for (int n = 0; n <= 5; ++n) {
            auto full = Subspace<Fp>::full(n, Fp(1, q));
            for (int k = 0; k <= n; ++k) {
                std::set<Subspace<Fp>> seen;
                int count = 0;
                enumerate_subspaces(full, k, FieldSpec::prime(q), [&](const Subspace<Fp>& s) {
                    ++count;
                    CHECK(s.dim() == k);
                    seen.insert(s);
                });
                CHECK(Integer(count) == gaussian_binomial(n, k, q));
                CHECK(static_cast<int>(seen.size()) == count);  // no duplicates
            }
        }
    }
}

TEST_CASE("enumerate_subspaces of a proper ambient subspace") {
    auto amb = Subspace<Fp>::from_rows(4, fp_matrix(3, {{1, 0, 1, 0}, {0, 1, 0, 2}, {0, 0, 0, 1}}));
    int count = 0;
    enumerate_subspaces(amb, 2, FieldSpec::prime(3), [&](const Subspace<Fp>& s) {
        ++count;
        CHECK(amb.contains(s));
    });
    CHECK(Integer(count) == gaussian_binomial(3, 2, 3));
    CHECK_THROWS(enumerate_subspaces(amb, 1, FieldSpec::rationals(), [](const Subspace<Fp>&) {}));
}

TEST_CASE("enumerate_intermediate") {
    auto lower = Subspace<Fp>::from_rows(3, fp_matrix(2, {{1, 0, 0}}));
    auto upper = Subspace<Fp>::full(3, Fp(1, 2));
    std::set<Subspace<Fp>> seen;
    enumerate_intermediate(lower, upper, 1, FieldSpec::prime(2), [&](const Subspace<Fp>& s) {
        CHECK(s.dim() == 2);
        CHECK(s.contains(lower));
        CHECK(upper.contains(s));
        seen.insert(s);
    });
    CHECK(Integer(seen.size()) == gaussian_binomial(2, 1, 2));
}

TEST_CASE("interpolate_and_eval1") {
    using S = std::vector<std::pair<Integer, Integer>>;
    auto r1 = interpolate_and_eval1(S{{2, 3}, {3, 4}, {5, 6}}, 1);
    REQUIRE(r1.has_value());
    CHECK(r1->value_at_1 == 2);
    IntPolynomial qp;
    qp.coefficients = {Rational(1), Rational(1)};
    CHECK(r1->poly == qp);

    // GL2 point count (q^2-1)(q^2-q) vanishes at q = 1
    S gl2;
    for (Integer q : {2, 3, 5, 7, 11, 13, 17})
        gl2.emplace_back(q, (q * q - 1) * (q * q - q));
    auto r2 = interpolate_and_eval1(gl2, 4);
    REQUIRE(r2.has_value());
    CHECK(r2->value_at_1 == 0);

    auto r3 = interpolate_and_eval1(S{{2, 5}, {3, 5}, {5, 5}}, 0);
    REQUIRE(r3.has_value());
    CHECK(r3->value_at_1 == 5);

    // surplus disagreement reports failure
    auto bad = interpolate_and_eval1(S{{2, 3}, {3, 4}, {5, 7}}, 1);
    CHECK(!bad.has_value());
}

TEST_CASE("interpolation recovers any polynomial of degree <= bound") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        int deg = static_cast<int>(rng() % 5);
        IntPolynomial p;
        for (int i = 0; i <= deg; ++i)
            p.coefficients.push_back(Rational(static_cast<int>(rng() % 9) - 4));
        p.normalize();
        std::vector<std::pair<Integer, Integer>> samples;
        std::vector<Rational> vals;
        bool integral = true;
        for (std::uint64_t q : first_primes(deg + 3)) {
            Rational v = p.eval(Rational(q));
            integral = integral && boost::multiprecision::denominator(v) == 1;
            samples.emplace_back(Integer(q), boost::multiprecision::numerator(v));
        }
        REQUIRE(integral);
        auto r = interpolate_and_eval1(samples, deg);
        REQUIRE(r.has_value());
        CHECK(r->poly == p);
        CHECK(r->value_at_1 == p.eval(Rational(1)));
    }
}

TEST_CASE("Fp arithmetic and rational reduction") {
    Fp a(5, 7), b(4, 7);
    CHECK(a + b == Fp(2, 7));
    CHECK(a * b == Fp(6, 7));
    CHECK((a / b) * b == a);
    CHECK(reduce_mod(Rational(1) / 2, 7) == Fp(4, 7));
    CHECK_THROWS(reduce_mod(Rational(1) / 7, 7));
}
