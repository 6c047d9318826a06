#pragma once

#include <cstdint>
#include <cstdlib>

namespace cuspflow {

// Gaussian integers, enough arithmetic for coset bookkeeping over Z[i].
struct Gint {
    long long re = 0, im = 0;

    friend Gint operator+(Gint a, Gint b) { return {a.re + b.re, a.im + b.im}; }
    friend Gint operator-(Gint a, Gint b) { return {a.re - b.re, a.im - b.im}; }
    friend Gint operator*(Gint a, Gint b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(Gint a, Gint b) { return a.re == b.re && a.im == b.im; }

    Gint conj() const { return {re, -im}; }
    long long norm() const { return re * re + im * im; }
    bool is_zero() const { return re == 0 && im == 0; }
    bool is_unit() const { return norm() == 1; }
};

// nearest-integer quotient; N(a - qb) <= N(b)/2, so the Euclid loop terminates
inline Gint gint_div_round(Gint a, Gint b) {
    long long nb = b.norm();
    Gint num = a * b.conj();
    auto rdiv = [](long long x, long long n) -> long long {
        // round(x/n) for n > 0
        return (x >= 0) ? (2 * x + n) / (2 * n) : -((-2 * x + n) / (2 * n));
    };
    return {rdiv(num.re, nb), rdiv(num.im, nb)};
}

inline Gint gint_gcd(Gint a, Gint b) {
    while (!b.is_zero()) {
        Gint q = gint_div_round(a, b);
        Gint r = a - q * b;
        a = b;
        b = r;
    }
    return a;
}

inline bool gint_coprime(Gint a, Gint b) {
    if (a.is_zero()) return b.is_unit();
    if (b.is_zero()) return a.is_unit();
    return gint_gcd(a, b).is_unit();
}

// the four units, indexed by power of i
inline Gint gint_unit(int k) {
    switch (k & 3) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

// power of i moving z into {arg in [0, pi/2)}, i.e. Re > 0, Im >= 0 (z != 0)
inline int gint_canonical_unit(Gint z) {
    for (int k = 0; k < 4; ++k) {
        Gint w = gint_unit(k) * z;
        if (w.re > 0 && w.im >= 0) return k;
    }
    return 0; // unreachable for z != 0
}

} // namespace cuspflow
