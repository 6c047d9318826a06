#pragma once

#include <cstdint>
#include <string>

#include "cuspflow/lattice.hpp"
#include "cuspflow/test_function.hpp"

namespace cuspflow {

struct ThetaValue {
    double value = 0.0;
    long long terms_used = 0;
    double norm_bound_used = 0.0;
};

// Theta_f(g) = sum over Gamma_inf \ Gamma of f(gamma g); finite because the
// enumeration window is pinned to the support of v in the A^1 coordinate.
ThetaValue theta_eval(const TestFunction& f, const GroupPoint& g, const LatticeSpec& L);

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long long n_samples = 0;
    std::uint64_t seed = 0;

    std::string to_json() const;
};

// ||Theta_f||^2 through the unfolded integral over Gamma_inf \ G, importance
// sampled on the support of f: t from the e^{-t}-weighted density on the
// support window, x uniform on the period cell, k restricted to the compact
// support of psi.
McEstimate direct_theta_norm(const TestFunction& f, const LatticeSpec& L, long long n_samples,
                             std::uint64_t seed, int n_workers = 1);

// plain average of Theta_f over Haar samples of Gamma \ G; the integral
// identity gives c0 ||f||_1
McEstimate siegel_mean(const TestFunction& f, const LatticeSpec& L, long long n_samples,
                       std::uint64_t seed, int n_workers = 1);

// folding-side estimate of ||Theta_f||^2 over Haar samples (the variance is
// poor; kept as the cross-check of the unfolded Jacobian)
McEstimate folded_theta_norm(const TestFunction& f, const LatticeSpec& L, long long n_samples,
                             std::uint64_t seed, int n_workers = 1);

struct SubgroupComparison {
    McEstimate lhs;      // ||Theta_f^Lambda||^2
    McEstimate rhs_norm; // ||Theta_f^Gamma||^2
    double rhs_bound = 0.0; // ([G_inf:L_inf]^2/[G:L]) * rhs_norm.mean
    bool pass = false;   // lhs <= rhs_bound within 3 combined SE
};

SubgroupComparison subgroup_comparison(const TestFunction& f, const LatticeSpec& L_sub,
                                       long long n_samples, std::uint64_t seed, int n_workers = 1);

} // namespace cuspflow
