#pragma once

// Independent oracles used by the test suites. These deliberately avoid the
// library's own evaluation paths: zeta via Euler-Maclaurin (the library uses
// the accelerated alternating series), heights via brute-force orbit maxima,
// coset sums via naive double loops.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

namespace oracles {

using cplx = std::complex<double>;

// Euler-Maclaurin zeta: sum_{k<N} k^{-s} + N^{1-s}/(s-1) + N^{-s}/2 +
// Bernoulli corrections; good to ~1e-13 for |Im s| <= 60 with N = 80
inline cplx zeta_euler_maclaurin(cplx s, int N = 80) {
    static const double B[8] = {1.0 / 6,  -1.0 / 30, 1.0 / 42,  -1.0 / 30,
                                5.0 / 66, -691.0 / 2730, 7.0 / 6, -3617.0 / 510};
    cplx acc = 0.0;
    for (int k = 1; k < N; ++k) acc += std::pow(double(k), -s);
    acc += std::pow(double(N), 1.0 - s) / (s - 1.0);
    acc += 0.5 * std::pow(double(N), -s);
    cplx fact = s;                 // s (s+1) ... running product
    double fac2 = 2.0;             // (2j)!
    cplx npow = std::pow(double(N), -s - 1.0);
    for (int j = 1; j <= 8; ++j) {
        acc += B[j - 1] / fac2 * fact * npow;
        fact *= (s + double(2 * j - 1)) * (s + double(2 * j));
        fac2 *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
        npow /= double(N) * double(N);
    }
    return acc;
}

// max over coprime |c|,|d| <= bound of Im((a z + b)/(c z + d)) for the
// modular group acting on z
inline double max_height_brute(cplx z, int bound) {
    double best = z.imag(); // (c,d) = (0,1)
    for (int c = 0; c <= bound; ++c) {
        for (int d = -bound; d <= bound; ++d) {
            if (c == 0 && d <= 0) continue;
            if (std::gcd(c, std::abs(d)) != 1) continue;
            double den = std::norm(double(c) * z + double(d));
            if (den > 1e-300) best = std::max(best, z.imag() / den);
        }
    }
    return best;
}

// Gaussian-integer analogue: max of h / (|c z + d|^2 + |c|^2 h^2)
inline double max_height_brute_zi(cplx z, double h, int bound) {
    double best = 0.0;
    for (int cr = -bound; cr <= bound; ++cr)
        for (int ci = -bound; ci <= bound; ++ci)
            for (int dr = -bound; dr <= bound; ++dr)
                for (int di = -bound; di <= bound; ++di) {
                    cplx c(cr, ci), d(dr, di);
                    double den = std::norm(c * z + d) + std::norm(c) * h * h;
                    if (den < 1e-300) continue;
                    // coprimality not needed for the max: non-coprime rows give
                    // smaller heights than their primitive part
                    best = std::max(best, h / den);
                }
    return best;
}

// two-sample Kolmogorov-Smirnov distance
inline double ks_distance(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j]) ++i;
        else ++j;
        d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
    }
    return d;
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// least-squares slope of y against x
inline std::pair<double, double> fit_line(const std::vector<double>& x,
                                          const std::vector<double>& y) {
    double n = double(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    double intercept = (sy - slope * sx) / n;
    return {slope, intercept};
}

} // namespace oracles
