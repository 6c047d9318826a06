#pragma once

#include <complex>

namespace cuspflow {

using cplx = std::complex<double>;

// log Gamma and Gamma on C (Lanczos with reflection for Re < 0.5)
cplx log_gamma(cplx z);
cplx gamma_c(cplx z);

// Riemann zeta via Borwein's accelerated eta series; valid for Re s > 0,
// s != 1. Throws PoleAtOne within 1e-12 of the pole.
cplx riemann_zeta(cplx s);

// Dirichlet L(s, chi_-4) = sum (-1)^k / (2k+1)^s, same acceleration
cplx dirichlet_l_chi4(cplx s);

// Dedekind zeta of Q(i): zeta(s) * L(s, chi_-4)
cplx dedekind_zeta_qi(cplx s);

} // namespace cuspflow
