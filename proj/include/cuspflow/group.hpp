#pragma once

#include <complex>
#include <vector>

#include "cuspflow/errors.hpp"

namespace cuspflow {

using cplx = std::complex<double>;

enum class FactorKind { Real, Complex };

// mu weight of a factor: 1 for SL2(R), 2 for SL2(C)
inline int mu_of(FactorKind k) { return k == FactorKind::Real ? 1 : 2; }

// One 2x2 unit-determinant block. Real factors carry zero imaginary parts.
struct Mat2 {
    cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

    cplx det() const { return a * d - b * c; }
    Mat2 mul(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat2 inverse() const { return {d, -b, -c, a}; } // valid for det = 1
};

struct Factor {
    FactorKind kind = FactorKind::Real;
    Mat2 m;
};

// Element of G = prod_j G_j.
struct GroupPoint {
    std::vector<Factor> factors;

    std::size_t n() const { return factors.size(); }

    GroupPoint mul(const GroupPoint& o) const;

    // rescale each block so |det - 1| stays below 1e-12; long products drift
    void renormalize();

    double max_abs_diff(const GroupPoint& o) const;
};

struct CompactParam {
    // SO(2): k_theta, theta in [0, 2pi). SU(2): k_{theta,alpha,beta} with
    // theta in [0, pi/2], alpha, beta in [0, 2pi).
    double theta = 0.0, alpha = 0.0, beta = 0.0;
};

struct FactorCoords {
    FactorKind kind = FactorKind::Real;
    cplx x{0.0};
    double t = 0.0;
    CompactParam k;
};

struct IwasawaCoords {
    std::vector<FactorCoords> factors;
    std::size_t n() const { return factors.size(); }
};

// Coordinates adapted to the cusp: t expressed in the basis given by the
// columns of D (last column eta), with the last coordinate t_n the height.
struct CuspCoords {
    std::vector<cplx> x;
    std::vector<double> tvec;
    double tn = 0.0;
    std::vector<CompactParam> k;
    double haar_density = 0.0; // R * exp(-t_n)
};

// Direction vector of a one-parameter lower-triangular unipotent flow,
// y in [0,1]^n with max y_j = 1.
struct FlowDirection {
    std::vector<double> y;

    explicit FlowDirection(std::vector<double> yv);
    static FlowDirection standard(std::size_t n) { return FlowDirection(std::vector<double>(n, 1.0)); }
};

Mat2 make_n(cplx x);
Mat2 make_a(double t);
Mat2 make_k_real(double theta);
Mat2 make_k_complex(double theta, double alpha, double beta);
Mat2 compose_factor(const FactorCoords& c);
FactorCoords iwasawa_factor(FactorKind kind, const Mat2& m);

IwasawaCoords iwasawa_decompose(const GroupPoint& g);
GroupPoint compose(const IwasawaCoords& c);

// u_s = n^-_{s y}: per factor [[1,0],[s*y_j,1]]
GroupPoint unipotent(double s, const FlowDirection& y, const std::vector<FactorKind>& kinds);

// density exp(-sum_j mu_j t_j) of dg = exp(-sum mu_j t_j) dt dx dk
double haar_density(const IwasawaCoords& c);

// probability density of dk on the compact box; dtheta (and dalpha dbeta)
// implied. SO(2): 1/(2pi). SU(2): sin(2 theta)/(4 pi^2).
double compact_density(FactorKind kind, const CompactParam& k);

// D is n x n column-major: columns 0..n-2 span {sum mu_j v_j = 0} (unit-log
// vectors), last column must be eta = (1/n)(mu_1^{-1},...,mu_n^{-1}).
// R = det D is the regulator.
CuspCoords cusp_coords(const GroupPoint& g, const std::vector<std::vector<double>>& D_columns,
                       double regulator);

GroupPoint random_group_point(FactorKind kind, class RngStream& rng, std::size_t n = 1);

} // namespace cuspflow
