#include "cuspflow/special.hpp"

#include <cmath>
#include <functional>
#include <vector>

#include "cuspflow/errors.hpp"

namespace cuspflow {

namespace {
constexpr double kPi = 3.14159265358979323846;

// Lanczos g = 7, n = 9 (Godfrey coefficients)
const double kLanczos[9] = {
    0.99999999999980993,  676.5203681218851,    -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,  12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// Borwein "algorithm 2" Chebyshev weights:
// d_k = n * sum_{j=0}^{k} (n+j-1)! 4^j / ((n-j)! (2j)!)
// long double: d_n ~ (3+sqrt 8)^n overflows double already at n ~ 400, and
// large imaginary arguments need n ~ 1.31 |Im s|
std::vector<long double> borwein_d(int n) {
    std::vector<long double> d(n + 1);
    long double t = 1.0L / n; // j = 0 term
    long double s = t;
    d[0] = n * s;
    for (int j = 1; j <= n; ++j) {
        t *= 4.0L * (n + j - 1) * (n - j + 1) / ((long double)(2 * j) * (2 * j - 1));
        s += t;
        d[j] = n * s;
    }
    return d;
}

// alternating sum_{k>=0} (-1)^k a(k), accelerated; the caller picks n from
// the imaginary part of the exponent
cplx borwein_alternating(const std::vector<long double>& d, const std::function<cplx(int)>& a) {
    int n = int(d.size()) - 1;
    std::complex<long double> acc = 0.0L;
    long double sign = 1.0L;
    for (int k = 0; k < n; ++k) {
        cplx ak = a(k);
        acc += sign * (d[k] - d[n]) * std::complex<long double>(ak.real(), ak.imag());
        sign = -sign;
    }
    acc /= -d[n];
    return cplx(double(acc.real()), double(acc.imag()));
}

int borwein_terms(double im) { return 30 + int(std::ceil(1.31 * std::abs(im))); }

} // namespace

cplx log_gamma(cplx z) {
    if (z.real() < 0.5) {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma(1.0 - z);
    }
    z -= 1.0;
    cplx x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + double(i));
    cplx t = z + 7.5;
    return 0.918938533204672742 /* log sqrt(2 pi) */ + (z + 0.5) * std::log(t) - t + std::log(x);
}

cplx gamma_c(cplx z) { return std::exp(log_gamma(z)); }

cplx riemann_zeta(cplx s) {
    if (std::abs(s - cplx(1.0)) < 1e-12) throw PoleAtOne("riemann_zeta: s = 1");
    int n = borwein_terms(s.imag());
    static thread_local int cached_n = -1;
    static thread_local std::vector<long double> cached_d;
    if (n != cached_n) {
        cached_d = borwein_d(n);
        cached_n = n;
    }
    cplx eta = borwein_alternating(cached_d, [&](int k) { return std::pow(double(k + 1), -s); });
    cplx denom = 1.0 - std::pow(2.0, 1.0 - s);
    return eta / denom;
}

cplx dirichlet_l_chi4(cplx s) {
    int n = borwein_terms(s.imag());
    static thread_local int cached_n = -1;
    static thread_local std::vector<long double> cached_d;
    if (n != cached_n) {
        cached_d = borwein_d(n);
        cached_n = n;
    }
    return borwein_alternating(cached_d, [&](int k) { return std::pow(double(2 * k + 1), -s); });
}

cplx dedekind_zeta_qi(cplx s) { return riemann_zeta(s) * dirichlet_l_chi4(s); }

} // namespace cuspflow
