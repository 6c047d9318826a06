#include "cuspflow/transform.hpp"

#include <cmath>

#include "cuspflow/quadrature.hpp"

namespace cuspflow {

namespace {
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

// oscillation-aware panel count for e^{-irt} over a piece of length len
int panels_for(double r, double len) {
    return std::max(1, int(std::ceil(std::abs(r) * len / 4.0)) + 1);
}
} // namespace

cplx line_transform(const std::function<double(double)>& f, const std::vector<double>& brk,
                    double r, double sigma) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
        double a = brk[i], b = brk[i + 1];
        auto integrand = [&](double t) {
            return f(t) * std::exp(-sigma * t) * std::polar(1.0, -r * t);
        };
        acc += integrate_panels(integrand, a, b, panels_for(r, b - a), 16);
    }
    return acc * kInvSqrt2Pi;
}

cplx vhat(const BumpV& v, double r, double sigma) {
    return line_transform([&](double t) { return v(t); }, v.breakpoints(), r, sigma);
}

cplx laplace_transform(const BumpV& v, cplx s) {
    cplx acc = 0.0;
    auto brk = v.breakpoints();
    for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
        double a = brk[i], b = brk[i + 1];
        auto integrand = [&](double t) { return v(t) * std::exp(-s * t); };
        acc += integrate_panels(integrand, a, b, panels_for(s.imag(), b - a) + 2, 16);
    }
    return acc;
}

LineGrid build_line_grid(const BumpV& v, double tail_tol) {
    LineGrid grid;
    // panel width tied to the support length: vhat oscillates on scale 2pi/|t_min|
    double len = std::max(1.0, -v.t_min);
    double panel = std::max(0.25, 2.0 / len);
    int nodes = 12;
    const GaussLegendre& gl = gauss_legendre(nodes);

    double total = 0.0;
    double edge = 0.0;
    double radius = 0.0;
    // grow symmetric panels [edge, edge+panel] until an octave beyond `radius`
    // contributes a negligible share of the accumulated integral
    auto add_panel = [&](double a, double b) {
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double contrib = 0.0;
        for (int i = 0; i < nodes; ++i) {
            double rr = mid + half * gl.nodes[i];
            for (double sgn : {1.0, -1.0}) {
                double rs = sgn * rr;
                cplx vh = vhat(v, rs, 0.5);
                grid.r.push_back(rs);
                grid.w.push_back(gl.weights[i] * half);
                grid.vhat_half.push_back(vh);
                contrib += gl.weights[i] * half * std::norm(vh);
            }
        }
        return contrib;
    };
    int quiet = 0; // consecutive negligible panels before stopping
    for (int k = 0; k < 8000; ++k) {
        double last = add_panel(edge, edge + panel);
        total += last;
        edge += panel;
        radius = edge;
        if (edge >= 8.0 && last < tail_tol * std::max(total, 1e-300)) {
            if (++quiet >= 4) break;
        } else {
            quiet = 0;
        }
        if (edge > 2000.0) break;
    }
    grid.radius = radius;
    return grid;
}

double plancherel_lhs(const BumpV& v) {
    LineGrid g = build_line_grid(v);
    double acc = 0.0;
    for (std::size_t i = 0; i < g.r.size(); ++i) acc += g.w[i] * std::norm(g.vhat_half[i]);
    return acc;
}

double weighted_moment(const BumpV& v, int p) {
    double acc = 0.0;
    auto brk = v.breakpoints();
    for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
        acc += integrate_panels(
            [&](double t) { return std::pow(v(t), p) * std::exp(-t); }, brk[i], brk[i + 1], 4, 32);
    }
    return acc;
}

double plancherel_rhs(const BumpV& v) { return weighted_moment(v, 2); }

} // namespace cuspflow
