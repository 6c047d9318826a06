#pragma once

#include <complex>
#include <string>
#include <vector>

#include "cuspflow/lattice.hpp"

namespace cuspflow {

// Constant-term coefficient C(s) of the Eisenstein series at the cusp, in the
// normalization where the critical line is Re s = 1/2 for both factor kinds.
//
//   ModularZ : C(s) = xi(2s-1) / xi(2s),      xi(w) = pi^{-w/2} Gamma(w/2) zeta(w)
//   BianchiZi: C(s) = Lam(2s-1) / Lam(2s),    Lam(w) = pi^{-w} Gamma(w) zeta_Qi(w)
//
// Both completed functions satisfy xi(w) = xi(1-w), which is used to evaluate
// left of Re w = 1/2; in particular |C(1/2 + ir)| = 1 holds structurally.
cplx scattering_c(cplx s, const LatticeSpec& L);

// completed zeta functions with reflection
cplx completed_xi(cplx w);        // Riemann
cplx completed_lambda_qi(cplx w); // Dedekind zeta of Q(i)

struct Pole {
    double s;
    double residue;
};

struct ScatteringEvaluator {
    LatticeSpec lattice;
    std::vector<Pole> poles; // s_0 = 1 first; optional user-supplied extras in (1/2, 1)

    explicit ScatteringEvaluator(const LatticeSpec& L);

    cplx operator()(cplx s) const { return scattering_c(s, lattice); }

    // appends an exceptional pole (s_j, c_j), emulating lattices whose
    // constant term has poles inside (1/2, 1)
    void add_exceptional_pole(double s_j, double c_j);
};

// numerical residue of C at s = 1 by Richardson extrapolation of (s-1) C(s)
double scattering_residue_at_one(const LatticeSpec& L);

} // namespace cuspflow
