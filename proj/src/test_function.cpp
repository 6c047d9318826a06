#include "cuspflow/test_function.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "cuspflow/quadrature.hpp"
#include "cuspflow/su2.hpp"

namespace cuspflow {

namespace {
constexpr double kPi = 3.14159265358979323846;

// weight tables are expensive for the SU(2) family; memoize per (lambda, eps)
std::map<std::pair<double, double>, TestFunction>& family_cache(int which) {
    static std::map<std::pair<double, double>, TestFunction> real_cache, complex_cache;
    return which == 0 ? real_cache : complex_cache;
}
std::mutex cache_mutex;
} // namespace

double TestFunction::eval_real(double t_n, double theta) const {
    double vv = v(t_n);
    if (vv == 0.0) return 0.0;
    double tw = theta - kPi * std::nearbyint(theta / kPi); // psi is pi-periodic
    return amplitude * vv * smooth_bump(lambda * tw);
}

double TestFunction::eval_complex(double t_n, double sin_theta, double delta) const {
    double vv = v(t_n);
    if (vv == 0.0) return 0.0;
    return amplitude * vv * annulus_bump(lambda * sin_theta) * smooth_bump(lambda * delta);
}

double TestFunction::norm_l1() const { return amplitude * psi_mean * weighted_moment(v, 1); }

double TestFunction::norm_l2sq() const {
    return amplitude * amplitude * psi_l2 * weighted_moment(v, 2);
}

TestFunction real_test_function(double lambda, double eps) {
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto& cache = family_cache(0);
        auto it = cache.find({lambda, eps});
        if (it != cache.end()) return it->second;
    }
    TestFunction f;
    f.kind = FactorKind::Real;
    f.lambda = lambda;
    f.eps = eps;
    f.v = bump_v(lambda, eps, FactorKind::Real);
    f.theta_max = 1.0 / lambda;

    // psihat(2m) = (1/(pi lambda)) \int bump(u) cos(2 m u / lambda) du;
    // modes are extended until the (m+1)^{-4}-envelope tail is negligible
    auto mode = [&](int m) {
        double freq = 2.0 * m / lambda;
        double c = integrate_panels(
            [&](double u) { return smooth_bump(u) * std::cos(freq * u); }, -1.0, 1.0,
            std::max(2, int(freq)), 24);
        c /= kPi * lambda;
        return c * c;
    };
    int m_max = int(std::ceil(8.0 * lambda)) + 16;
    for (;;) {
        f.weights.resize(m_max + 1);
        for (int m = 0; m <= m_max; ++m) f.weights[m] = mode(m);
        double head = f.weights[0];
        for (int m = 1; m <= m_max; ++m) head += 2.0 * f.weights[m];
        double c4 = 0.0;
        for (int m = (3 * m_max) / 4; m <= m_max; ++m)
            c4 = std::max(c4, f.weights[m] * std::pow(m + 1.0, 4.0));
        f.weight_tail_coeff = c4;
        double tail = 2.0 * c4 / (3.0 * std::pow(double(m_max), 3.0));
        if (tail < 1e-9 * head || m_max > 4000) break;
        m_max = int(1.4 * m_max) + 16;
    }
    f.psi_mean = std::sqrt(f.weights[0]);
    f.psi_l2 = integrate_panels([&](double u) { return smooth_bump(u) * smooth_bump(u); }, -1.0,
                                1.0, 2, 32) /
               (kPi * lambda);
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        family_cache(0).emplace(std::make_pair(lambda, eps), f);
    }
    return f;
}

TestFunction complex_test_function(double lambda, double eps, bool build_weights) {
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto& cache = family_cache(1);
        auto it = cache.find({lambda, eps});
        if (it != cache.end() && (!build_weights || !it->second.weights.empty()))
            return it->second;
    }
    TestFunction f;
    f.kind = FactorKind::Complex;
    f.lambda = lambda;
    f.eps = eps;
    f.v = bump_v(lambda, eps, FactorKind::Complex);
    f.sin_theta_max = std::min(1.0, 1.0 / lambda);
    f.delta_max = std::min(kPi, 1.0 / lambda);

    auto psi = [lambda](double st, double dl) {
        return annulus_bump(lambda * st) * smooth_bump(lambda * dl);
    };

    // moments of psi under the probability measure sin(2 theta)/(4 pi^2):
    // the (theta, delta) marginal is sin(2 theta) dtheta ddelta / (2 pi)
    double th_lo = std::asin(std::min(1.0, 0.25 / lambda));
    double th_hi = std::asin(std::min(1.0, 1.0 / lambda));
    auto theta_int = [&](int pow) {
        return integrate_panels(
            [&](double th) {
                double a = annulus_bump(lambda * std::sin(th));
                return (pow == 1 ? a : a * a) * std::sin(2.0 * th);
            },
            th_lo, th_hi, 4, 32);
    };
    auto delta_int = [&](int pow) {
        return integrate_panels(
            [&](double dl) {
                double b = smooth_bump(lambda * dl);
                return pow == 1 ? b : b * b;
            },
            -f.delta_max, f.delta_max, 4, 32);
    };
    f.psi_mean = theta_int(1) * delta_int(1) / (2.0 * kPi);
    f.psi_l2 = theta_int(2) * delta_int(2) / (2.0 * kPi);

    if (build_weights) {
        int m_max = int(std::ceil(12.0 * lambda)) + 24;
        for (;;) {
            int n_grid = std::max(2 * m_max + 32, int(std::ceil(48.0 * lambda)));
            ProjectionNorms pn;
            try {
                pn = su2_projection_norms(psi, m_max, n_grid, n_grid);
            } catch (const QuadratureBudgetExceeded&) {
                m_max = int(1.4 * m_max) + 16;
                continue;
            }
            f.weights = pn.norms;
            double head = 0.0;
            for (double w : f.weights) head += w;
            double c4 = 0.0;
            for (int m = (3 * m_max) / 4; m <= m_max; ++m)
                c4 = std::max(c4, f.weights[m] * std::pow(m + 1.0, 4.0));
            f.weight_tail_coeff = c4;
            double tail = c4 / (3.0 * std::pow(double(m_max), 3.0));
            if (tail < 1e-5 * head || m_max > 2000) break;
            m_max = int(1.4 * m_max) + 16;
        }
    }
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto& cache = family_cache(1);
        cache.erase({lambda, eps});
        cache.emplace(std::make_pair(lambda, eps), f);
    }
    return f;
}

TestFunction scaled(TestFunction f, double c) {
    if (c < 0.0) f.positive = false;
    f.amplitude *= c;
    for (auto& w : f.weights) w *= c * c;
    f.psi_mean *= c;
    f.psi_l2 *= c * c;
    f.weight_tail_coeff *= c * c;
    return f;
}

} // namespace cuspflow
