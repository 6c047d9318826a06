#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cuspflow/gaussian_int.hpp"
#include "cuspflow/group.hpp"
#include "cuspflow/rng.hpp"

namespace cuspflow {

enum class LatticeKind { ModularZ, BianchiZi, CongruenceSub };

// Concrete one-cusp lattices: SL2(Z) in SL2(R), SL2(Z[i]) in SL2(C), and
// Hecke congruence subgroups Gamma_0(N) of SL2(Z).
//
// Normalization bookkeeping (all identities in this codebase use these
// values consistently; they are cross-validated by the Siegel-mean and
// residue tests):
//   ModularZ : R = 1,   |omega| = 1,   v = pi/3,            c0 = 3/pi
//   BianchiZi: R = 1/2, |omega| = 1/2, v = 2 * vol_hyp(F),  c0 = 3/(4G)
// where vol_hyp(F) = G/3 is the hyperbolic volume of the reduced domain
// (G = Catalan's constant), computed by quadrature at construction.
struct LatticeSpec {
    LatticeKind kind = LatticeKind::ModularZ;
    FactorKind factor = FactorKind::Real;
    int level = 1;        // N for Gamma_0(N); 1 otherwise
    double regulator = 1.0;
    double omega_measure = 1.0;
    double covolume = 1.0;
    int index_in_full = 1; // [Gamma : Lambda]
    int cusp_index = 1;    // [Gamma_inf : Lambda_inf]
    bool spectral_enabled = true;

    double c0() const { return omega_measure / covolume; }
    int mu() const { return mu_of(factor); }

    static LatticeSpec modular();
    static LatticeSpec bianchi();
    static LatticeSpec gamma0(int N);

    std::string to_json() const;
    static LatticeSpec from_json(const std::string& text);
};

// quadrature value of the hyperbolic volume of the reduced Bianchi domain
// {|Re z| <= 1/2, 0 <= Im z <= 1/2, |z|^2 + h^2 >= 1}; equals Catalan/3
double bianchi_domain_volume();

struct ReducedPoint {
    GroupPoint rep;
    double height = 1.0;  // e^{t} of the reduced representative (max over translates)
    int word_length = 0;
};

ReducedPoint reduce(const GroupPoint& g, const LatticeSpec& L);

// point-level reduction used in the orbit loops: returns the reduced height
double modular_reduce_height(double x, double y, int* moves = nullptr);
double bianchi_reduce_height(cplx z, double h, int* moves = nullptr);

// distance-like function: Delta = max(0, mu * log(reduced height)).
// Normalized so that sigma{Delta > r} = c0 * e^{-r} for r >= 0.
double delta(const GroupPoint& g, const LatticeSpec& L);
double delta_point_modular(double x, double y);
double delta_point_bianchi(cplx z, double h);

struct CosetRep {
    // bottom row over Z (imaginary parts zero for ModularZ) or Z[i],
    // canonicalized modulo units
    Gint c, d;

    // completes the row to a unimodular matrix over the ring
    std::array<Gint, 4> completed_matrix() const;
};

// Enumeration of Gamma_inf \ Gamma cosets with ||(c,d) g||^2 <= norm_bound
// (squared row norm after right multiplication by g). The visitor receives
// the integer pair and the complex row (c', d') = (c,d) g together with
// q = |c'|^2 + |d'|^2.
//
// row_min: optional lower bound on q (two-sided window, used by theta sums).
// first_entry_bound: optional bound |c'| <= first_entry_bound; cosets outside
// it are skipped (only valid when the integrand vanishes there).
struct EnumWindow {
    double norm_bound = 1.0;
    double row_min = 0.0;
    double first_entry_bound = -1.0; // < 0: disabled
};

using CosetVisitor = std::function<void(const CosetRep&, cplx c_row, cplx d_row, double q)>;

void for_each_coset(const GroupPoint& g, const LatticeSpec& L, const EnumWindow& win,
                    const CosetVisitor& visit);

std::vector<CosetRep> enumerate_cosets(const GroupPoint& g, const LatticeSpec& L,
                                       double norm_bound);

// as enumerate_cosets, restricted by the congruence condition c = 0 mod N
std::vector<CosetRep> subgroup_cosets(const GroupPoint& g, const LatticeSpec& L_sub,
                                      double norm_bound);

// point sample of the normalized Haar measure on Gamma \ G
struct HaarPoint {
    cplx z;      // base point: x + i y (ModularZ) or z-coordinate (BianchiZi)
    double h;    // height: Im z (ModularZ) or the H^3 height
    CompactParam k;
};

HaarPoint haar_sample_point(const LatticeSpec& L, RngStream& rng);
GroupPoint haar_sample(const LatticeSpec& L, RngStream& rng);
GroupPoint group_point_from(const LatticeSpec& L, const HaarPoint& p);

} // namespace cuspflow
