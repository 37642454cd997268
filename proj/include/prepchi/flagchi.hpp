#pragma once

#include "prepchi/enumerate.hpp"
#include "prepchi/module.hpp"
#include "prepchi/polynomial.hpp"
#include "prepchi/starlocal.hpp"

#include <functional>

namespace prepchi {

/// A chain shape for submodule flags, bottom-first: step 1 carves out the
/// deepest submodule, of dimension vector m_1 * alpha_{i_1}.
struct FlagSpec {
    std::vector<std::pair<int, int>> steps;  // (vertex i_s, multiplicity m_s)

    WeightVector weight() const {
        WeightVector nu;
        for (auto [i, m] : steps) nu.add(i, m);
        return nu;
    }
    void check() const {
        for (auto [i, m] : steps) {
            (void)i;
            if (m < 1) throw std::invalid_argument("FlagSpec: multiplicities must be >= 1");
        }
    }
};

/// Point counts N(q) over several primes, plus the degree bound used to fit.
struct CountCurve {
    std::vector<std::pair<std::uint64_t, Integer>> samples;
    int degree_bound = 0;
};

struct EulerResult {
    Integer value;
    CountCurve curve;
    IntPolynomial fitted;
};

/// Dimension bound for the flag variety: at step s the enlargement is an
/// m_s-dimensional subspace of a quotient of dimension at most
/// dims(i_s) - (multiplicity already placed at i_s), so the variety embeds in
/// a product of Grassmannians of total dimension sum m_s (d_s - c_s - m_s).
template <class K>
int flag_degree_bound(const LambdaModule<K>& m, const FlagSpec& spec) {
    std::map<int, int> placed;
    int bound = 0;
    for (auto [i, ms] : spec.steps) {
        bound += ms * (m.dim(i) - placed[i] - ms);
        placed[i] += ms;
    }
    return bound;
}

/// Number of chains 0 = N_0 <= N_1 <= ... <= N_r = M of submodules with
/// N_s/N_{s-1} concentrated at vertex i_s in dimension m_s.
inline Integer submodule_flag_count(const LambdaModule<Fp>& m, const FlagSpec& spec) {
    spec.check();
    if (!(spec.weight() == dimvec(m)))
        throw std::invalid_argument("submodule_flag_count: weight mismatch");
    Fp one = m.one();
    Integer q(m.field.characteristic);
    int r = static_cast<int>(spec.steps.size());

    // a step is unconstrained when every arrow out of its vertex is zero;
    // once all remaining steps are unconstrained the branch counts no longer
    // depend on the chain built so far and the tail collapses to a product
    // of Gaussian binomials
    std::vector<bool> unconstrained(r, true);
    for (int s = 0; s < r; ++s)
        for (const Arrow& h : m.graph.arrows)
            if (h.source == spec.steps[s].first && !m.map(h.id).is_zero_matrix())
                unconstrained[s] = false;
    std::vector<Integer> tail(r + 1);  // product over the free suffix, or -1
    tail[r] = 1;
    {
        std::map<int, int> placed;
        for (auto [i, ms] : spec.steps) placed[i] += ms;
        for (int s = r - 1; s >= 0; --s) {
            auto [i, ms] = spec.steps[s];
            placed[i] -= ms;
            if (tail[s + 1] < 0 || !unconstrained[s]) {
                tail[s] = -1;
                continue;
            }
            tail[s] = tail[s + 1] * gaussian_binomial(m.dim(i) - placed[i], ms, q);
        }
    }

    Integer total = 0;
    std::map<int, Subspace<Fp>> n0;
    for (int v : m.graph.vertices) n0[v] = Subspace<Fp>::zero(m.dim(v));
    std::function<void(int, const std::map<int, Subspace<Fp>>&)> rec =
        [&](int s, const std::map<int, Subspace<Fp>>& n) {
            if (tail[s] >= 0) {
                total += tail[s];
                return;
            }
            auto [i, ms] = spec.steps[s];
            Subspace<Fp> k = Subspace<Fp>::full(m.dim(i), one);
            for (const Arrow& h : m.graph.arrows)
                if (h.source == i) k = intersect(k, preimage(m.map(h.id), n.at(h.target), one));
            if (!k.contains(n.at(i))) return;  // cannot happen for a submodule chain
            if (k.dim() - n.at(i).dim() < ms) return;
            enumerate_intermediate(n.at(i), k, ms, m.field, [&](const Subspace<Fp>& ni) {
                std::map<int, Subspace<Fp>> next = n;
                next[i] = ni;
                rec(s + 1, next);
            });
        };
    rec(0, n0);
    return total;
}

/// First `count` primes avoiding the denominators of m's entries.
inline std::vector<std::uint64_t> auto_primes(const LambdaModule<Rational>& m, int count) {
    return first_primes(count, denominator_primes(m));
}

/// Euler characteristic of the flag variety: count points over each prime,
/// fit a polynomial in q of the bounded degree, verify the surplus samples,
/// and evaluate at q = 1. Throws "non-polynomial count" when the samples do
/// not lie on one polynomial.
inline EulerResult euler_characteristic(const LambdaModule<Rational>& m, const FlagSpec& spec,
                                        const std::vector<std::uint64_t>& primes) {
    spec.check();
    if (!(spec.weight() == dimvec(m)))
        throw std::invalid_argument("euler_characteristic: weight mismatch");
    int bound = flag_degree_bound(m, spec);
    if (static_cast<int>(primes.size()) < bound + 2)
        throw std::invalid_argument("euler_characteristic: not enough primes for degree bound " +
                                    std::to_string(bound));
    CountCurve curve;
    curve.degree_bound = bound;
    std::vector<std::pair<Integer, Integer>> samples;
    for (std::uint64_t p : primes) {
        Integer n = submodule_flag_count(reduce_mod(m, p), spec);
        curve.samples.emplace_back(p, n);
        samples.emplace_back(Integer(p), n);
    }
    auto fit = interpolate_and_eval1(samples, bound);
    if (!fit) throw std::runtime_error("non-polynomial count");
    if (boost::multiprecision::denominator(fit->value_at_1) != 1)
        throw std::logic_error("euler_characteristic: non-integral value at q = 1");
    return EulerResult{boost::multiprecision::numerator(fit->value_at_1), curve, fit->poly};
}

/// delta evaluation with the per-prime aggregate curve kept for reporting.
struct DeltaResult {
    Rational value;
    std::vector<std::pair<std::uint64_t, Rational>> curve;
    std::vector<std::uint64_t> primes;
};

/// <delta_M, u>: for a word e_{i_1}...e_{i_n} the flag spec is read right to
/// left (the rightmost letter is the bottom step); extended by linearity.
/// With no explicit primes, the first (max degree bound + 3) primes avoiding
/// the module's denominators are used.
inline DeltaResult delta_eval_detailed(const LambdaModule<Rational>& m, const FreeElement& u,
                                       std::vector<std::uint64_t> primes = {}) {
    WeightVector nu = dimvec(m);
    std::vector<std::pair<FlagSpec, Rational>> specs;
    int max_bound = 0;
    for (const auto& [w, c] : u.terms) {
        if (!(weight(w) == nu))
            throw std::invalid_argument("delta_eval: word weight differs from dimvec");
        FlagSpec spec;
        for (auto it = w.rbegin(); it != w.rend(); ++it) spec.steps.emplace_back(*it, 1);
        max_bound = std::max(max_bound, flag_degree_bound(m, spec));
        specs.emplace_back(std::move(spec), c);
    }
    if (primes.empty()) primes = auto_primes(m, max_bound + 3);

    DeltaResult out;
    out.primes = primes;
    for (std::uint64_t p : primes) out.curve.emplace_back(p, Rational(0));
    for (const auto& [spec, c] : specs) {
        EulerResult er = euler_characteristic(m, spec, primes);
        out.value += c * Rational(er.value);
        for (size_t s = 0; s < primes.size(); ++s)
            out.curve[s].second += c * Rational(er.curve.samples[s].second);
    }
    return out;
}

inline Rational delta_eval(const LambdaModule<Rational>& m, const FreeElement& u,
                           const std::vector<std::uint64_t>& primes = {}) {
    return delta_eval_detailed(m, u, primes).value;
}

struct GenFormReport {
    bool precondition_ok = false;
    bool pass = false;
    std::string message;
    Rational lhs;
    Rational rhs;
    std::vector<std::pair<std::uint64_t, Rational>> curve_lhs;
    std::vector<std::pair<std::uint64_t, Rational>> curve_rhs;
    std::vector<std::uint64_t> primes;
};

/// Checks <delta_M, u> = <delta_{Sigma_i* M}, T_i(u)> for an f-monomial u,
/// under the hypothesis ker(m_out at i) = 0.
inline GenFormReport verify_genform(const LambdaModule<Rational>& m, int i, const FWord& u,
                                    std::vector<std::uint64_t> primes = {}) {
    GenFormReport rep;
    if (!m.graph.has_vertex(i)) {
        rep.message = "unknown vertex";
        return rep;
    }
    if (phi_stats(m, i).second != 0) {
        rep.message = "precondition violated: ker(m_out) != 0 at vertex " + std::to_string(i);
        return rep;
    }
    CartanMatrix cartan = cartan_matrix(m.graph);
    FreeElement lhs_elem = expand_fword(u, cartan);
    if (!(u.weight() == dimvec(m))) {
        rep.message = "weight of u differs from dimvec";
        return rep;
    }
    rep.precondition_ok = true;

    LambdaModule<Rational> rm = sigma_star(m, i);
    FreeElement rhs_elem = reflect_fword(u, cartan);
    if (primes.empty()) {
        int bound = 0;
        for (const auto& [w, c] : lhs_elem.terms) {
            (void)c;
            FlagSpec spec;
            for (auto it = w.rbegin(); it != w.rend(); ++it) spec.steps.emplace_back(*it, 1);
            bound = std::max(bound, flag_degree_bound(m, spec));
        }
        for (const auto& [w, c] : rhs_elem.terms) {
            (void)c;
            FlagSpec spec;
            for (auto it = w.rbegin(); it != w.rend(); ++it) spec.steps.emplace_back(*it, 1);
            bound = std::max(bound, flag_degree_bound(rm, spec));
        }
        std::vector<std::uint64_t> avoid = denominator_primes(m);
        for (std::uint64_t p : denominator_primes(rm)) avoid.push_back(p);
        primes = first_primes(bound + 3, avoid);
    }

    DeltaResult lhs = delta_eval_detailed(m, lhs_elem, primes);
    DeltaResult rhs = rhs_elem.is_zero_element()
                          ? DeltaResult{Rational(0), {}, primes}
                          : delta_eval_detailed(rm, rhs_elem, primes);
    rep.lhs = lhs.value;
    rep.rhs = rhs.value;
    rep.curve_lhs = lhs.curve;
    rep.curve_rhs = rhs.curve;
    rep.primes = primes;
    rep.pass = rep.lhs == rep.rhs;
    if (!rep.pass) rep.message = "identity failed";
    return rep;
}

}  // namespace prepchi
