#pragma once

#include <vector>

#include "cuspflow/bump.hpp"
#include "cuspflow/transform.hpp"

namespace cuspflow {

// Factored test function f(a_{eta t} k) = v(t) psi(k) on Q\G for a single
// factor. The compact part is held through its weight data: squared Fourier
// coefficients |psihat(2m)|^2 for SO(2), projection norms ||phi_m||^2 for
// SU(2). The canonical families concentrate psi on a 1/lambda-neighborhood
// of the identity coset of M\K.
struct TestFunction {
    FactorKind kind = FactorKind::Real;
    BumpV v;
    double lambda = 1.0;
    double eps = 0.1;
    double amplitude = 1.0;
    bool positive = true;

    std::vector<double> weights; // m >= 0; Real weights are symmetric in m
    double psi_mean = 1.0;       // \int psi dk
    double psi_l2 = 1.0;         // \int |psi|^2 dk
    double weight_tail_coeff = 0.0; // C with ||phi_m||^2 <= C/(m+1)^4 beyond m_max

    // k-support radii used to restrict sampling and enumeration
    double theta_max = 0.0;     // Real: |theta| <= theta_max (mod pi)
    double sin_theta_max = 0.0; // Complex
    double delta_max = 0.0;     // Complex

    int m_max() const { return int(weights.size()) - 1; }
    double mult(int m) const { return (kind == FactorKind::Real && m > 0) ? 2.0 : 1.0; }

    double eval_real(double t_n, double theta) const;
    double eval_complex(double t_n, double sin_theta, double delta) const;

    double norm_l1() const;   // \int_{Q\G} f
    double norm_l2sq() const; // \int_{Q\G} |f|^2
};

// the canonical shrinking families. build_weights = false skips the SU(2)
// harmonic transform (direct-path work at large lambda needs only the
// moments, which come from cheap 2-d quadrature).
TestFunction real_test_function(double lambda, double eps);
TestFunction complex_test_function(double lambda, double eps, bool build_weights = true);

TestFunction scaled(TestFunction f, double c);

} // namespace cuspflow
