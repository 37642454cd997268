#pragma once

#include "prepchi/chart.hpp"
#include "prepchi/flagchi.hpp"

namespace prepchi {

enum class IntegralSide { F, G };

namespace detail {

/// Signed point count of the side-F integrand over F_p: filtrations X from 0
/// to W with jumps at J, each weighted by the product of the eta signs. The
/// enumeration is pruned to x(V_p) + X_{p-1} <= X_p <= V_p cap W, off which
/// f vanishes.
inline Integer side_f_count(const FiltrationSetup<Fp>& s) {
    Fp one = s.one();
    std::vector<Subspace<Fp>> prefix(s.n + 1), ximage(s.n + 1);
    for (int p = 0; p <= s.n; ++p) {
        prefix[p] = coordinate_prefix(s.n, p, one);
        ximage[p] = image_on_prefix(s.x, p);
    }
    Integer total = 0;
    std::function<void(int, const Subspace<Fp>&, int)> rec = [&](int p, const Subspace<Fp>& xprev,
                                                                 int sign) {
        if (p > s.n) {
            total += sign;
            return;
        }
        if (!s.J.count(p)) {
            // no jump: X_p = X_{p-1}, which must still satisfy (h)
            if (!xprev.contains(ximage[p])) return;
            if (!intersect(prefix[p], s.W).contains(xprev)) return;
            rec(p + 1, xprev, sign);
            return;
        }
        Subspace<Fp> lower = sum(ximage[p], xprev);
        Subspace<Fp> upper = intersect(prefix[p], s.W);
        int step = xprev.dim() + 1 - lower.dim();
        if (step < 0 || !upper.contains(lower)) return;
        bool eta_minus = !xprev.contains(ximage[p]);  // x(V_p) not inside X_{p-1}
        enumerate_intermediate(lower, upper, step, s.field, [&](const Subspace<Fp>& xp) {
            int eta;
            if (!prefix[p - 1].contains(xp))
                eta = 1;
            else if (eta_minus)
                eta = -1;
            else
                return;  // f vanishes on this branch
            rec(p + 1, xp, sign * eta);
        });
    };
    rec(1, Subspace<Fp>::zero(s.n), 1);
    return total;
}

/// Side G: filtrations Y from W to V with jumps off J, pruned to
/// V_p + Y_{p-1} <= Y_p <= x^{-1}(V_p).
inline Integer side_g_count(const FiltrationSetup<Fp>& s) {
    Fp one = s.one();
    std::vector<Subspace<Fp>> prefix(s.n + 1), xpre(s.n + 1);
    for (int p = 0; p <= s.n; ++p) {
        prefix[p] = coordinate_prefix(s.n, p, one);
        xpre[p] = preimage(s.x, prefix[p], one);
    }
    Integer total = 0;
    std::function<void(int, const Subspace<Fp>&, int)> rec = [&](int p, const Subspace<Fp>& yprev,
                                                                 int sign) {
        if (p > s.n) {
            total += sign;
            return;
        }
        if (s.J.count(p)) {
            // no jump: Y_p = Y_{p-1}, which must still satisfy (k)
            if (!yprev.contains(prefix[p])) return;
            if (!xpre[p].contains(yprev)) return;
            rec(p + 1, yprev, sign);
            return;
        }
        Subspace<Fp> lower = sum(prefix[p], yprev);
        const Subspace<Fp>& upper = xpre[p];
        int step = yprev.dim() + 1 - lower.dim();
        if (step < 0 || !upper.contains(lower)) return;
        bool eta_plus = !yprev.contains(prefix[p]);  // V_p not inside Y_{p-1}
        enumerate_intermediate(lower, upper, step, s.field, [&](const Subspace<Fp>& yp) {
            int eta;
            if (eta_plus)
                eta = 1;
            else if (!xpre[p - 1].contains(yp))
                eta = -1;
            else
                return;  // g vanishes on this branch
            rec(p + 1, yp, sign * eta);
        });
    };
    rec(1, s.W, 1);
    return total;
}

}  // namespace detail

/// Degree bound for the point-count polynomial: free entries of the chart of
/// the setup itself (side F) or of its twist (side G).
inline int integral_degree_bound(const FiltrationSetup<Rational>& s, IntegralSide side) {
    FiltrationSetup<Rational> t = side == IntegralSide::F ? s : twist(s);
    Matrix<Rational> e = adapted_basis(t);
    Diagram d = build_diagram(t, e);
    MatrixChart ch = build_chart(d, t.J);
    return ch.empty ? 0 : ch.free_count();
}

inline std::vector<std::uint64_t> setup_auto_primes(const FiltrationSetup<Rational>& s,
                                                    int count) {
    return first_primes(count, setup_denominator_primes(s));
}

/// The integral of f (side F) or g (side G) as an Euler characteristic:
/// signed point counts over each prime, polynomial fit, value at q = 1.
inline EulerResult brute_force_integral(const FiltrationSetup<Rational>& s, IntegralSide side,
                                        std::vector<std::uint64_t> primes = {}) {
    auto v = validate_setup(s);
    if (!v.ok)
        throw std::invalid_argument("brute_force_integral: invalid setup " + v.item + ": " +
                                    v.message);
    int bound = integral_degree_bound(s, side);
    if (primes.empty()) primes = setup_auto_primes(s, bound + 3);
    if (static_cast<int>(primes.size()) < bound + 2)
        throw std::invalid_argument("brute_force_integral: not enough primes for degree bound " +
                                    std::to_string(bound));
    CountCurve curve;
    curve.degree_bound = bound;
    std::vector<std::pair<Integer, Integer>> samples;
    for (std::uint64_t p : primes) {
        FiltrationSetup<Fp> sp = reduce_setup_mod(s, p);
        Integer n = side == IntegralSide::F ? detail::side_f_count(sp) : detail::side_g_count(sp);
        curve.samples.emplace_back(p, n);
        samples.emplace_back(Integer(p), n);
    }
    auto fit = interpolate_and_eval1(samples, bound);
    if (!fit) throw std::runtime_error("non-polynomial count");
    if (boost::multiprecision::denominator(fit->value_at_1) != 1)
        throw std::logic_error("brute_force_integral: non-integral value at q = 1");
    return EulerResult{boost::multiprecision::numerator(fit->value_at_1), curve, fit->poly};
}

struct MainLemmaReport {
    int recipe = 0;
    int twisted_recipe = 0;
    EulerResult side_f;
    EulerResult side_g;
    bool pass = false;
    std::string message;
};

/// The central identity: integral of f = integral of g = the combinatorial
/// recipe, on the setup and on its twist.
inline MainLemmaReport verify_mainlemma(const FiltrationSetup<Rational>& s,
                                        const std::vector<std::uint64_t>& primes = {}) {
    MainLemmaReport rep;
    Matrix<Rational> e = adapted_basis(s);
    Diagram d = build_diagram(s, e);
    rep.recipe = recipe_value(d, s.J);

    FiltrationSetup<Rational> t = twist(s);
    Matrix<Rational> et = adapted_basis(t);
    Diagram dt = build_diagram(t, et);
    rep.twisted_recipe = recipe_value(dt, t.J);

    rep.side_f = brute_force_integral(s, IntegralSide::F, primes);
    rep.side_g = brute_force_integral(s, IntegralSide::G, primes);

    rep.pass = true;
    auto mismatch = [&](const std::string& what) {
        rep.pass = false;
        if (!rep.message.empty()) rep.message += "; ";
        rep.message += what;
    };
    if (rep.side_f.value != Integer(rep.recipe)) mismatch("side F differs from recipe");
    if (rep.side_g.value != Integer(rep.recipe)) mismatch("side G differs from recipe");
    if (rep.twisted_recipe != rep.recipe) mismatch("twisted recipe differs from recipe");
    return rep;
}

}  // namespace prepchi
