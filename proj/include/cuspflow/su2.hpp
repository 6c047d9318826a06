#pragma once

#include <functional>
#include <vector>

#include "cuspflow/rng.hpp"

namespace cuspflow {

// A function on M\K for K = SU(2), given in the chart (sin theta, alpha-beta).
// M\K is measure-isomorphic to the unit sphere via (Theta, Phi) =
// (2 theta, alpha - beta), carrying normalized Haar to the uniform measure;
// the isotypic component of the (2m+1)-dimensional representation is the
// space of degree-m spherical harmonics.
using MKFunction = std::function<double(double sin_theta, double delta)>;

struct ProjectionNorms {
    std::vector<double> norms; // ||phi_m||^2, m = 0..m_max
    double psi_l2 = 0.0;       // ||psi||^2 under the probability measure
    double psi_mean = 0.0;     // integral of psi dk
    double tail_estimate = 0.0;
};

// ||phi_m||^2 by spherical-harmonic quadrature: Gauss-Legendre in cos Theta,
// trapezoid in Phi. n_theta/n_phi = 0 picks sizes from m_max.
ProjectionNorms su2_projection_norms(const MKFunction& psi, int m_max, int n_theta = 0,
                                     int n_phi = 0);

// independent route kept for cross-checks: Monte Carlo character projection
// ||phi_m||^2 = (2m+1) E_{k,u} [ chi_m(k) psi(u k) conj(psi(u)) ]
struct McProjection {
    double value = 0.0;
    double std_error = 0.0;
};
McProjection su2_projection_norm_mc(const MKFunction& psi, int m, long long n_samples,
                                    RngStream& rng);

// character of the (2m+1)-dimensional representation at trace 2 cos(t)
double su2_character(int m, double cos_t);

} // namespace cuspflow
