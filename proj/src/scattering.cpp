#include "cuspflow/scattering.hpp"

#include <cmath>

#include "cuspflow/special.hpp"

namespace cuspflow {

namespace {
constexpr double kPi = 3.14159265358979323846;

cplx xi_raw(cplx w) {
    return std::pow(kPi, -w / 2.0) * gamma_c(w / 2.0) * riemann_zeta(w);
}

cplx lambda_raw(cplx w) {
    return std::pow(kPi, -w) * gamma_c(w) * dedekind_zeta_qi(w);
}
} // namespace

cplx completed_xi(cplx w) {
    if (w.real() < 0.5) w = 1.0 - w; // functional equation
    return xi_raw(w);
}

cplx completed_lambda_qi(cplx w) {
    if (w.real() < 0.5) w = 1.0 - w;
    return lambda_raw(w);
}

cplx scattering_c(cplx s, const LatticeSpec& L) {
    if (std::abs(s - cplx(1.0)) < 1e-10) throw PoleHit("scattering_c: pole at s = 1");
    if (std::abs(s - cplx(0.5)) < 1e-12) return -1.0; // xi(0)/xi(1) limit
    switch (L.kind) {
        case LatticeKind::ModularZ:
            return completed_xi(2.0 * s - 1.0) / completed_xi(2.0 * s);
        case LatticeKind::BianchiZi:
            if (!L.spectral_enabled)
                throw UnsupportedLattice("scattering_c: BianchiZi spectral path disabled");
            return completed_lambda_qi(2.0 * s - 1.0) / completed_lambda_qi(2.0 * s);
        default:
            throw UnsupportedLattice("scattering_c: no closed form for this lattice");
    }
}

ScatteringEvaluator::ScatteringEvaluator(const LatticeSpec& L) : lattice(L) {
    // the only pole in [1/2, 1] for these lattices sits at s = 1 with
    // residue c0 = |omega| / v
    poles.push_back({1.0, L.c0()});
}

void ScatteringEvaluator::add_exceptional_pole(double s_j, double c_j) {
    if (!(s_j > 0.5 && s_j < 1.0)) throw ValidationError("exceptional pole must lie in (1/2, 1)");
    if (c_j <= 0.0) throw ValidationError("exceptional residues are positive");
    poles.push_back({s_j, c_j});
}

double scattering_residue_at_one(const LatticeSpec& L) {
    // Richardson extrapolation of f(h) = h * C(1 + h); f(h) = c0 + a h + b h^2 + ...
    auto f = [&](double h) { return (scattering_c(cplx(1.0 + h), L) * h).real(); };
    const int levels = 5;
    double tab[levels][levels];
    double h = 0.05;
    for (int i = 0; i < levels; ++i) {
        tab[i][0] = f(h / std::pow(2.0, i));
        for (int j = 1; j <= i; ++j) {
            double k = std::pow(2.0, j);
            tab[i][j] = (k * tab[i][j - 1] - tab[i - 1][j - 1]) / (k - 1.0);
        }
    }
    return tab[levels - 1][levels - 1];
}

} // namespace cuspflow
