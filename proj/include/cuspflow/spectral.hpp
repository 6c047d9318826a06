#pragma once

#include <string>
#include <vector>

#include "cuspflow/scattering.hpp"
#include "cuspflow/test_function.hpp"
#include "cuspflow/transform.hpp"

namespace cuspflow {

// Exact expansion of ||Theta_f||^2 through the Eisenstein constant terms:
//   total = c0 sum_m w_m (A + B_m) + c0 sum_j c_j M_f(s_j)
// with A the Plancherel term, B_m the critical-line cross term carrying
// C(1/2+ir) P_m(1/2+ir), and the pole sum including s_0 = 1 (which reduces to
// c0^2 |integral of f|^2). Bracketing per the positive-f bounds.
struct PoleContribution {
    double s = 1.0;
    double residue = 0.0;
    double mf_value = 0.0;
    double contribution = 0.0; // c0 * residue * mf_value
};

struct SpectralNormReport {
    double l2_term = 0.0;     // c0 * sum_m w_m * A  ( = c0 ||f||_2^2 up to truncation)
    double cross_term = 0.0;  // c0 * sum_m w_m * B_m
    double cross_imag = 0.0;  // imaginary residue of the cross term (should vanish)
    std::vector<PoleContribution> pole_terms;
    double total = 0.0;
    double lower = 0.0, upper = 0.0; // positive-f bracketing
    bool bracket_ok = false;
    double weight_tail = 0.0;   // relative weight-series tail bound
    double line_radius = 0.0;   // truncation radius of the r-integral
    int m_used = 0;

    std::string to_json() const;
};

SpectralNormReport spectral_theta_norm(const TestFunction& f, const ScatteringEvaluator& S,
                                       const LatticeSpec& L);

// M_f(s) = sum_m mult_m P_m(s) w_m |∫ v e^{-s t} dt|^2  (factored form)
double mf_eval(const TestFunction& f, double s);

// endpoint slope: lim_{s->1} (M_f(s) - M_f^{m=0}(s)) / (1 - s)
//                = sum_{m != 0} mult_m w_m pm_pole_slope(m) |∫ v e^{-t} dt|^2.
// The weight-m summands of M_f vanish linearly at s = 1 (P_m(1) = 0 for
// m != 0); this functional is where the logarithmic lambda-degeneracy of the
// endpoint lives.
double mf_endpoint_slope(const TestFunction& f);

} // namespace cuspflow
