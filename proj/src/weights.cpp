#include "cuspflow/weights.hpp"

#include <cmath>

namespace cuspflow {

namespace {

cplx pm_factor(int m_abs, cplx s, int mu) {
    if (m_abs <= 50) {
        cplx p = 1.0;
        for (int k = 0; k < m_abs; ++k) {
            cplx den = double(mu) * s + double(k);
            if (std::abs(den) < 1e-14) throw PoleInDenominator("pm_eval: mu s + k = 0");
            p *= (double(mu) * (1.0 - s) + double(k)) / den;
        }
        return p;
    }
    cplx lg = 0.0;
    for (int k = 0; k < m_abs; ++k) {
        cplx den = double(mu) * s + double(k);
        if (std::abs(den) < 1e-14) throw PoleInDenominator("pm_eval: mu s + k = 0");
        lg += std::log(double(mu) * (1.0 - s) + double(k)) - std::log(den);
    }
    return std::exp(lg);
}

} // namespace

cplx pm_eval(const WeightIndex& m, cplx s, const std::vector<int>& mu) {
    if (m.m.size() != mu.size()) throw ValidationError("pm_eval: weight/mu length mismatch");
    cplx p = 1.0;
    for (std::size_t j = 0; j < mu.size(); ++j) p *= pm_factor(std::abs(m.m[j]), s, mu[j]);
    return p;
}

cplx pm_single(int m, cplx s, FactorKind kind) {
    return pm_factor(std::abs(m), s, mu_of(kind));
}

cplx pm_step(cplx pm, int m_abs, cplx s, FactorKind kind) {
    double mu = mu_of(kind);
    cplx den = mu * s + double(m_abs);
    if (std::abs(den) < 1e-14) throw PoleInDenominator("pm_step: mu s + m = 0");
    return pm * (mu * (1.0 - s) + double(m_abs)) / den;
}

std::pair<double, double> pm_asymptotic_check(double s, int m_max, FactorKind kind) {
    if (m_max < 10) throw ValidationError("pm_asymptotic_check: m_max must be >= 10");
    double expo = kind == FactorKind::Real ? (2.0 * s - 1.0) : (4.0 * s - 2.0);
    double lo = 1e300, hi = -1e300;
    cplx p = 1.0;
    for (int m = 1; m <= m_max; ++m) {
        p = pm_step(p, m - 1, cplx(s), kind);
        double ratio = p.real() * std::pow(double(m + 1), expo);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    return {lo, hi};
}

double pm_pole_slope(int m, FactorKind kind) {
    int ma = std::abs(m);
    if (ma == 0) return 0.0;
    if (kind == FactorKind::Real) return 1.0 / double(ma);
    return 2.0 / (double(ma) * double(ma + 1));
}

} // namespace cuspflow
