#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "cuspflow/bump.hpp"

namespace cuspflow {

// shifted Fourier transform of a piecewise-smooth compactly supported profile:
// vhat(r - i sigma) = (1/sqrt(2 pi)) \int v(t) e^{-sigma t} e^{-i r t} dt
cplx vhat(const BumpV& v, double r, double sigma);

// generic version for test profiles; breakpoints delimit smooth pieces
cplx line_transform(const std::function<double(double)>& f, const std::vector<double>& breakpoints,
                    double r, double sigma);

// \int v(t) e^{-s t} dt over the support (complex s)
cplx laplace_transform(const BumpV& v, cplx s);

// symmetric quadrature grid for integrals \int g(r) dr against |vhat(r-i/2)|^2;
// the radius adapts to the measured transform decay until the outermost
// octave contributes less than `tail_tol` of the running total.
struct LineGrid {
    std::vector<double> r;
    std::vector<double> w;
    std::vector<cplx> vhat_half; // vhat(r_i - i/2)
    double radius = 0.0;
};

LineGrid build_line_grid(const BumpV& v, double tail_tol = 1e-9);

// Plancherel pair: lhs = \int |vhat(r - i/2)|^2 dr via the grid,
// rhs = \int |v(t)|^2 e^{-t} dt via piecewise quadrature
double plancherel_lhs(const BumpV& v);
double plancherel_rhs(const BumpV& v);

// \int v(t)^p e^{-t} dt, p = 1 or 2
double weighted_moment(const BumpV& v, int p);

} // namespace cuspflow
