#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace prepchi {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool is_zero(const Rational& a) { return a.is_zero(); }

/// Scalar of a prime field F_p with runtime modulus. A default-constructed
/// value is the zero of an unspecified field (p == 0) and may be combined
/// with scalars of any modulus; every nonzero value carries its modulus.
struct Fp {
    std::uint64_t v = 0;
    std::uint64_t p = 0;

    Fp() = default;
    Fp(std::uint64_t value, std::uint64_t prime) : v(value % prime), p(prime) {
        assert(prime >= 2);
    }

    friend std::uint64_t merge_mod(const Fp& a, const Fp& b) {
        if (a.p != 0 && b.p != 0 && a.p != b.p)
            throw std::invalid_argument("Fp: mixed moduli " + std::to_string(a.p) +
                                        " and " + std::to_string(b.p));
        return a.p != 0 ? a.p : b.p;
    }

    // bare values (p == 0) are restricted to {0, 1}; arithmetic that would
    // leave that range has no well-defined residue and is rejected
    static Fp bare(std::uint64_t value) {
        if (value > 1) throw std::domain_error("Fp: bare value outside {0, 1}");
        Fp f;
        f.v = value;
        return f;
    }

    friend Fp operator+(const Fp& a, const Fp& b) {
        std::uint64_t m = merge_mod(a, b);
        if (m == 0) return bare(a.v + b.v);
        return Fp(a.v + b.v, m);
    }
    friend Fp operator-(const Fp& a, const Fp& b) {
        std::uint64_t m = merge_mod(a, b);
        if (m == 0) {
            if (b.v > a.v) throw std::domain_error("Fp: bare value outside {0, 1}");
            return bare(a.v - b.v);
        }
        return Fp(a.v + m - b.v % m, m);
    }
    friend Fp operator*(const Fp& a, const Fp& b) {
        std::uint64_t m = merge_mod(a, b);
        if (m == 0) return bare(a.v * b.v);
        return Fp(a.v * b.v, m);  // moduli stay below 2^31, no overflow
    }
    Fp operator-() const {
        if (p == 0) {
            if (v != 0) throw std::domain_error("Fp: negation of a bare unit");
            return Fp{};
        }
        return Fp(p - v % p, p);
    }
    Fp inv() const {
        if (p == 0) {
            if (v != 1) throw std::domain_error("Fp: inverse of zero");
            return *this;  // bare unit is its own inverse
        }
        if (v % p == 0) throw std::domain_error("Fp: inverse of zero");
        // Fermat: v^(p-2) mod p
        std::uint64_t base = v % p, e = p - 2, r = 1;
        while (e) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return Fp(r, p);
    }
    friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inv(); }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }

    friend bool operator==(const Fp& a, const Fp& b) {
        merge_mod(a, b);
        std::uint64_t av = a.p ? a.v % a.p : a.v;
        std::uint64_t bv = b.p ? b.v % b.p : b.v;
        return av == bv;
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }
};

inline bool is_zero(const Fp& a) { return a.p == 0 ? a.v == 0 : a.v % a.p == 0; }

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Which exact field the computation runs over.
struct FieldSpec {
    enum class Kind { rationals, prime_field };
    Kind kind = Kind::rationals;
    std::uint64_t characteristic = 0;

    static FieldSpec rationals() { return FieldSpec{}; }
    static FieldSpec prime(std::uint64_t p) {
        if (!is_prime(p)) throw std::invalid_argument("FieldSpec: characteristic must be prime");
        return FieldSpec{Kind::prime_field, p};
    }
    bool is_rational() const { return kind == Kind::rationals; }
};

/// Reduce a rational mod p. Throws if the denominator vanishes mod p.
inline Fp reduce_mod(const Rational& a, std::uint64_t p) {
    Integer num = boost::multiprecision::numerator(a);
    Integer den = boost::multiprecision::denominator(a);
    Integer ip(p);
    if (den % ip == 0) throw std::domain_error("bad prime: denominator divisible by " + std::to_string(p));
    auto res = [&](Integer x) {
        Integer r = x % ip;
        if (r < 0) r += ip;
        return static_cast<std::uint64_t>(r);
    };
    return Fp(res(num), p) / Fp(res(den), p);
}

inline std::string to_string(const Rational& a) { return a.str(); }
inline std::string to_string(const Fp& a) { return std::to_string(a.p ? a.v % a.p : a.v); }

}  // namespace prepchi
