#pragma once

#include <vector>

#include "cuspflow/group.hpp"

namespace cuspflow {

// Smooth [0,1]-valued profile on the A^1 coordinate, supported on [t_min, 0]:
// ramps of unit length at both ends, identically 1 in between. Support length
// is (1 + eps) log lambda for Real factors and (3 + eps) log lambda for
// Complex ones. When the support is shorter than the two unit ramps the
// profile degrades to a single centered bump and is flagged.
struct BumpV {
    double lambda = 1.0;
    double eps = 0.1;
    FactorKind kind = FactorKind::Real;
    double t_min = 0.0;
    bool degenerate = false;

    double operator()(double t) const;

    // smooth pieces for quadrature: {t_min, t_min+1, -1, 0} or {t_min, t_min/2, 0}
    std::vector<double> breakpoints() const;
};

BumpV bump_v(double lambda, double eps, FactorKind kind);

// C-infinity ramp: 0 at u <= 0, 1 at u >= 1, monotone
double smooth_step(double u);

// C-infinity bump on (-1, 1) with value 1 at 0
double smooth_bump(double u);

// C-infinity bump supported on (1/4, 1), value 1 at 5/8; the compact-part
// profile of the SU(2) family keeps sin(theta) away from 0 so the induced
// function is smooth on M\K (the chart degenerates at the poles)
double annulus_bump(double u);

} // namespace cuspflow
