#pragma once

#include "prepchi/field.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace prepchi {

/// Polynomial with rational coefficients, ascending degree, no trailing zeros.
struct IntPolynomial {
    std::vector<Rational> coefficients;

    void normalize() {
        while (!coefficients.empty() && is_zero(coefficients.back())) coefficients.pop_back();
    }
    int degree() const { return static_cast<int>(coefficients.size()) - 1; }

    Rational eval(const Rational& x) const {
        Rational acc = 0;
        for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }

    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
        return a.coefficients == b.coefficients;
    }
};

struct InterpolationResult {
    Rational value_at_1;
    IntPolynomial poly;
};

/// Lagrange-interpolate the first degree_bound+1 samples and check that the
/// fitted polynomial reproduces every surplus sample. Returns nullopt when a
/// surplus sample disagrees ("non-polynomial count").
inline std::optional<InterpolationResult> interpolate_and_eval1(
    const std::vector<std::pair<Integer, Integer>>& samples, int degree_bound) {
    if (static_cast<int>(samples.size()) < degree_bound + 2)
        throw std::invalid_argument(
            "interpolate_and_eval1: need at least one surplus sample beyond degree_bound + 1");
    int m = degree_bound + 1;

    // Newton divided differences on the first m samples
    std::vector<Rational> xs(m), dd(m);
    for (int i = 0; i < m; ++i) {
        xs[i] = Rational(samples[i].first);
        dd[i] = Rational(samples[i].second);
    }
    for (int level = 1; level < m; ++level)
        for (int i = m - 1; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);

    // expand to monomial coefficients
    IntPolynomial poly;
    poly.coefficients.assign(m, Rational(0));
    std::vector<Rational> basis{Rational(1)};  // prod (x - xs[j]), j < i
    for (int i = 0; i < m; ++i) {
        for (size_t j = 0; j < basis.size(); ++j) poly.coefficients[j] += dd[i] * basis[j];
        if (i + 1 < m) {
            basis.push_back(Rational(0));
            for (size_t j = basis.size() - 1; j > 0; --j)
                basis[j] = basis[j - 1] - xs[i] * basis[j];
            basis[0] = -xs[i] * basis[0];
        }
    }
    poly.normalize();

    for (size_t i = m; i < samples.size(); ++i)
        if (poly.eval(Rational(samples[i].first)) != Rational(samples[i].second))
            return std::nullopt;

    return InterpolationResult{poly.eval(Rational(1)), poly};
}

/// First n primes not contained in `avoid` (sorted).
inline std::vector<std::uint64_t> first_primes(int n, const std::vector<std::uint64_t>& avoid = {}) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t c = 2; static_cast<int>(out.size()) < n; ++c) {
        if (!is_prime(c)) continue;
        bool skip = false;
        for (std::uint64_t a : avoid) skip = skip || a == c;
        if (!skip) out.push_back(c);
    }
    return out;
}

}  // namespace prepchi
