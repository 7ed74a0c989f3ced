#pragma once

// Exact coefficient arithmetic: arbitrary-precision rationals (GMP) and
// prime fields with a runtime modulus. The field is fixed per computation
// context and carried as a small context value (QField / FpField); the
// rest of the library is templated on that context.

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace rescal {

/// Element of F_p for a 64-bit prime p. Values are kept in [0, p).
struct Fp64 {
    std::uint64_t v = 0;
    std::uint64_t p = 0;

    friend bool operator==(const Fp64& a, const Fp64& b) {
        return a.v == b.v && a.p == b.p;
    }
    friend bool operator!=(const Fp64& a, const Fp64& b) { return !(a == b); }

    friend Fp64 operator+(const Fp64& a, const Fp64& b) {
        assert(a.p == b.p);
        std::uint64_t s = a.v + b.v;
        if (s >= a.p) s -= a.p;
        return {s, a.p};
    }
    friend Fp64 operator-(const Fp64& a, const Fp64& b) {
        assert(a.p == b.p);
        return {a.v >= b.v ? a.v - b.v : a.v + a.p - b.v, a.p};
    }
    friend Fp64 operator-(const Fp64& a) {
        return {a.v == 0 ? 0 : a.p - a.v, a.p};
    }
    friend Fp64 operator*(const Fp64& a, const Fp64& b) {
        assert(a.p == b.p);
        return {static_cast<std::uint64_t>(
                    (static_cast<unsigned __int128>(a.v) * b.v) % a.p),
                a.p};
    }
    Fp64 inverse() const {
        if (v == 0) throw std::domain_error("Fp64: division by zero");
        // extended Euclid on (v, p); p prime so gcd = 1
        std::int64_t t = 0, newt = 1;
        std::int64_t r = static_cast<std::int64_t>(p),
                     newr = static_cast<std::int64_t>(v);
        while (newr != 0) {
            std::int64_t q = r / newr;
            std::int64_t tmp = t - q * newt;
            t = newt;
            newt = tmp;
            tmp = r - q * newr;
            r = newr;
            newr = tmp;
        }
        if (t < 0) t += static_cast<std::int64_t>(p);
        return {static_cast<std::uint64_t>(t), p};
    }
    friend Fp64 operator/(const Fp64& a, const Fp64& b) {
        return a * b.inverse();
    }
};

/// The rational field Q. Elements are GMP rationals, always reduced with
/// positive denominator (mpq_class canonicalizes on arithmetic; from_*
/// canonicalizes explicitly).
struct QField {
    using Elem = mpq_class;

    Elem from_int(long n) const { return Elem(n); }
    Elem from_fraction(long num, long den) const {
        Elem e(num, den);
        e.canonicalize();
        return e;
    }
    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    bool is_zero(const Elem& e) const { return sgn(e) == 0; }
    bool is_one(const Elem& e) const { return e == 1; }
    Elem neg(const Elem& e) const { return -e; }
    Elem inv(const Elem& e) const {
        if (sgn(e) == 0) throw std::domain_error("Q: division by zero");
        return 1 / e;
    }
    std::string str(const Elem& e) const { return e.get_str(); }
    bool is_integer(const Elem& e) const { return e.get_den() == 1; }
};

/// The prime field F_p, p a (trusted) 64-bit prime supplied at run time.
struct FpField {
    std::uint64_t p = 2;

    using Elem = Fp64;

    Elem from_int(long n) const {
        long long m = n % static_cast<long long>(p);
        if (m < 0) m += static_cast<long long>(p);
        return {static_cast<std::uint64_t>(m), p};
    }
    Elem from_fraction(long num, long den) const {
        return from_int(num) / from_int(den);
    }
    Elem zero() const { return {0, p}; }
    Elem one() const { return {1 % p, p}; }
    bool is_zero(const Elem& e) const { return e.v == 0; }
    bool is_one(const Elem& e) const { return e.v == 1 % p; }
    Elem neg(const Elem& e) const { return -e; }
    Elem inv(const Elem& e) const { return e.inverse(); }
    std::string str(const Elem& e) const { return std::to_string(e.v); }
    bool is_integer(const Elem&) const { return true; }
};

}  // namespace rescal
