#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include "cuspflow/group.hpp"

namespace cuspflow {

// Finite-difference verification of the ladder / Casimir identities on the
// explicit N\G models: R^2 with phi_{s,m} = (x1+ix2)^{2m} (x1^2+x2^2)^{-(s+m)}
// and C^2 with phi_{s,m} = (z1 conj z2)^m (|z1|^2+|z2|^2)^{-(2s+m)}.

struct LadderResidual {
    double max_relative = 0.0;
    int points = 0;
};

// a^{+-} phi_{s,m} = -2 (s +- m) phi_{s, m +- 1} on SL2(R); sign = +1 / -1
LadderResidual check_raising_real(cplx s, int m, int sign, int n_points, std::uint64_t seed);

struct ProportionalityReport {
    cplx mean_ratio;      // (a+ phi_{s,m}) / ((2s+m) phi_{s,m+1}), should be constant
    double max_deviation; // max |ratio - mean| over points (and s values if pooled)
    int points = 0;
};

// SL2(C) raising operator: tested as s-independent proportionality
ProportionalityReport check_raising_complex(cplx s, int m, int n_points, std::uint64_t seed);

struct CasimirReport {
    cplx mean_eigenvalue;
    double max_deviation;
    int sign = 0; // sign of Re(eigenvalue) / (4 s (1-s)) for real s in (1/2,1)
    int points = 0;
};

// eigenvalue of the displayed Casimir operator on phi_{s,m}; the magnitude is
// |4 s (1-s)|, the sign is measured rather than assumed
CasimirReport check_casimir_complex(double s, int m, int n_points, std::uint64_t seed);

// aggregated report used by the CLI
struct OperatorIdentityReport {
    double real_max_residual = 0.0;
    double complex_ratio_deviation = 0.0;
    double casimir_deviation = 0.0;
    cplx casimir_eigenvalue;
    int casimir_sign = 0;
    std::string to_json() const;
};

OperatorIdentityReport operator_identity_check(std::uint64_t seed);

} // namespace cuspflow
