#pragma once

#include <complex>
#include <vector>

#include "cuspflow/group.hpp"

namespace cuspflow {

// K-weight index across the factors: entries in Z for Real factors, in Z>=0
// for Complex ones.
struct WeightIndex {
    std::vector<int> m;
};

// Ratio relating the weight-m constant term to the spherical one:
//   P_m(s) = prod_j prod_{k=0}^{|m_j|-1} (mu_j (1-s) + k) / (mu_j s + k)
// Evaluated in log space for large |m| to avoid over/underflow.
cplx pm_eval(const WeightIndex& m, cplx s, const std::vector<int>& mu);

// single-factor convenience
cplx pm_single(int m, cplx s, FactorKind kind);

// incremental update P_{m+1} from P_m for a single factor (|m| >= 0)
cplx pm_step(cplx pm, int m_abs, cplx s, FactorKind kind);

// min/max over 1 <= m <= m_max of P_m(s) * (m+1)^{2s-1} (Real) or
// P_m(s) * (m+1)^{4s-2} (Complex); s real in (1/2, 1)
std::pair<double, double> pm_asymptotic_check(double s, int m_max, FactorKind kind);

// limit of P_m(s) / (1 - s) as s -> 1 for a single factor, m != 0:
// 1/|m| (Real), 2/(m (m+1)) (Complex). Drives the endpoint slope of M_f.
double pm_pole_slope(int m, FactorKind kind);

} // namespace cuspflow
