#include "cuspflow/bump.hpp"

#include <cmath>

namespace cuspflow {

double smooth_step(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    double a = std::exp(-1.0 / u);
    double b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
}

double smooth_bump(double u) {
    double u2 = u * u;
    if (u2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - u2));
}

double annulus_bump(double u) { return smooth_bump((u - 0.625) * (8.0 / 3.0)); }

double BumpV::operator()(double t) const {
    if (t <= t_min || t >= 0.0) return 0.0;
    if (degenerate) {
        double c = 0.5 * t_min, half = -0.5 * t_min;
        return smooth_bump((t - c) / half);
    }
    if (t < t_min + 1.0) return smooth_step(t - t_min);
    if (t > -1.0) return smooth_step(-t);
    return 1.0;
}

std::vector<double> BumpV::breakpoints() const {
    if (degenerate) return {t_min, 0.5 * t_min, 0.0};
    return {t_min, t_min + 1.0, -1.0, 0.0};
}

BumpV bump_v(double lambda, double eps, FactorKind kind) {
    if (lambda < 1.0) throw ValidationError("bump_v: lambda must be >= 1");
    if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("bump_v: eps must lie in (0, 1)");
    BumpV v;
    v.lambda = lambda;
    v.eps = eps;
    v.kind = kind;
    double stretch = kind == FactorKind::Real ? (1.0 + eps) : (3.0 + eps);
    v.t_min = -stretch * std::log(lambda);
    v.degenerate = -v.t_min < 2.0; // too short for the two unit ramps
    return v;
}

} // namespace cuspflow
