#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace cuspflow {

struct GaussLegendre {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

// cached Gauss-Legendre rule of order n
const GaussLegendre& gauss_legendre(int n);

// integral of f over [a, b] with an n-point rule
template <typename Fn>
auto integrate_gl(Fn&& f, double a, double b, int n) -> decltype(f(0.0)) {
    const GaussLegendre& gl = gauss_legendre(n);
    using R = decltype(f(0.0));
    R acc{};
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i)
        acc += gl.weights[i] * f(mid + half * gl.nodes[i]);
    return acc * half;
}

// panelled rule: [a,b] split into n_panels equal panels, n-point rule each
template <typename Fn>
auto integrate_panels(Fn&& f, double a, double b, int n_panels, int n = 16) -> decltype(f(0.0)) {
    using R = decltype(f(0.0));
    R acc{};
    double w = (b - a) / n_panels;
    for (int p = 0; p < n_panels; ++p) acc += integrate_gl(f, a + p * w, a + (p + 1) * w, n);
    return acc;
}

} // namespace cuspflow
