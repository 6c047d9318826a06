#include "cuspflow/su2.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "cuspflow/errors.hpp"
#include "cuspflow/group.hpp"
#include "cuspflow/quadrature.hpp"

namespace cuspflow {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
} // namespace

ProjectionNorms su2_projection_norms(const MKFunction& psi, int m_max, int n_theta, int n_phi) {
    if (m_max < 0) throw ValidationError("su2_projection_norms: m_max must be >= 0");
    if (m_max > 4096) throw QuadratureBudgetExceeded("su2_projection_norms: m_max beyond budget");
    if (n_theta <= 0) n_theta = 2 * m_max + 32;
    if (n_phi <= 0) n_phi = 2 * m_max + 32;

    const GaussLegendre& gl = gauss_legendre(n_theta);

    // Phi-transform per Gauss node: G_l(x_i) = (1/n_phi) sum_j F e^{-i l Phi_j}
    // (trapezoid on the circle, spectrally accurate)
    std::vector<std::vector<std::complex<double>>> G(n_theta);
    double l2 = 0.0, mean = 0.0;
    for (int i = 0; i < n_theta; ++i) {
        double x = gl.nodes[i]; // cos Theta
        double sin_half = std::sqrt(std::max(0.0, 0.5 * (1.0 - x))); // sin(Theta/2)
        G[i].assign(m_max + 1, 0.0);
        double row_l2 = 0.0, row_mean = 0.0;
        for (int j = 0; j < n_phi; ++j) {
            double phi = kTwoPi * j / n_phi;
            double delta = phi > kPi ? phi - kTwoPi : phi; // principal value
            double f = psi(sin_half, delta);
            row_l2 += f * f;
            row_mean += f;
            if (f != 0.0) {
                std::complex<double> e = std::polar(1.0, -phi);
                std::complex<double> ep = 1.0;
                for (int l = 0; l <= m_max; ++l) {
                    G[i][l] += f * ep;
                    ep *= e;
                }
            }
        }
        for (int l = 0; l <= m_max; ++l) G[i][l] /= double(n_phi);
        l2 += gl.weights[i] * row_l2 / n_phi;
        mean += gl.weights[i] * row_mean / n_phi;
    }
    // probability measure on the sphere: dOmega / (4 pi) = dx dPhi / (4 pi)
    l2 *= 0.5;
    mean *= 0.5;

    // c_{m,l} = (2 pi / sqrt(4 pi)) \int G_l(x) pbar_{m,l}(x) dx with pbar the
    // orthonormal associated Legendre functions; psi is real so the l and -l
    // coefficients have equal modulus
    ProjectionNorms out;
    out.norms.assign(m_max + 1, 0.0);
    out.psi_l2 = l2;
    out.psi_mean = mean;

    // only azimuthal modes actually present contribute; the families have
    // wedge support of width O(1/lambda) so l_active << m_max
    int l_active = 0;
    {
        double gmax = 0.0;
        std::vector<double> lmax(m_max + 1, 0.0);
        for (int l = 0; l <= m_max; ++l) {
            for (int i = 0; i < n_theta; ++i) lmax[l] = std::max(lmax[l], std::abs(G[i][l]));
            gmax = std::max(gmax, lmax[l]);
        }
        for (int l = 0; l <= m_max; ++l)
            if (lmax[l] > 1e-15 * gmax) l_active = l;
    }

    const double c_front = kTwoPi / std::sqrt(4.0 * kPi);
    std::vector<double> p_prev(n_theta), p_cur(n_theta);
    for (int l = 0; l <= l_active; ++l) {
        auto accumulate = [&](int m, const std::vector<double>& p) {
            std::complex<double> c = 0.0;
            for (int i = 0; i < n_theta; ++i) c += gl.weights[i] * G[i][l] * p[i];
            c *= c_front;
            out.norms[m] += std::norm(c) * (l > 0 ? 2.0 : 1.0); // |c_{m,-l}| = |c_{m,l}|, psi real
        };
        // pbar_{l,l}
        for (int i = 0; i < n_theta; ++i) {
            double sx = std::sqrt(std::max(0.0, 1.0 - gl.nodes[i] * gl.nodes[i]));
            double p = 1.0 / std::sqrt(4.0 * kPi);
            for (int k = 1; k <= l; ++k) p *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * sx;
            p_cur[i] = p;
        }
        accumulate(l, p_cur);
        if (l == m_max) break;
        // pbar_{l+1,l}
        p_prev = p_cur;
        for (int i = 0; i < n_theta; ++i)
            p_cur[i] = std::sqrt(2.0 * l + 3.0) * gl.nodes[i] * p_prev[i];
        accumulate(l + 1, p_cur);
        for (int m = l + 2; m <= m_max; ++m) {
            double a = std::sqrt((4.0 * double(m) * m - 1.0) / (double(m) * m - double(l) * l));
            double b = std::sqrt(((double(m) - 1.0) * (m - 1.0) - double(l) * l) /
                                 (4.0 * (double(m) - 1.0) * (m - 1.0) - 1.0));
            for (int i = 0; i < n_theta; ++i) {
                double next = a * (gl.nodes[i] * p_cur[i] - b * p_prev[i]);
                p_prev[i] = p_cur[i];
                p_cur[i] = next;
            }
            accumulate(m, p_cur);
        }
    }

    double head = 0.0;
    for (double v : out.norms) head += v;
    out.tail_estimate = out.psi_l2 - head; // completeness deficit
    if (out.psi_l2 > 0 && std::abs(out.tail_estimate) > 1e-3 * out.psi_l2)
        throw QuadratureBudgetExceeded("su2_projection_norms: increase m_max (completeness gap)");
    return out;
}

double su2_character(int m, double cos_t) {
    // Chebyshev U_{2m}(cos t) = sin((2m+1) t) / sin(t)
    double u0 = 1.0, u1 = 2.0 * cos_t;
    if (m == 0) return u0;
    double u = u1;
    for (int k = 2; k <= 2 * m; ++k) {
        double nx = 2.0 * cos_t * u1 - u0;
        u0 = u1;
        u1 = nx;
        u = nx;
    }
    return u;
}

McProjection su2_projection_norm_mc(const MKFunction& psi, int m, long long n_samples,
                                    RngStream& rng) {
    // psi(u k) needs the (sin theta, delta) chart of the product; carry u and
    // k as SU(2) matrices
    auto random_su2 = [&](CompactParam& p) {
        p.theta = std::asin(std::sqrt(rng.uniform01()));
        p.alpha = rng.uniform(0.0, kTwoPi);
        p.beta = rng.uniform(0.0, kTwoPi);
    };
    auto eval_chart = [&](const Mat2& k) {
        double st = std::abs(k.b); // |sin theta|
        double delta = std::arg(k.a) - std::arg(k.b);
        if (std::abs(k.b) < 1e-14) delta = 0.0;
        while (delta > kPi) delta -= kTwoPi;
        while (delta <= -kPi) delta += kTwoPi;
        return psi(st, delta);
    };
    double sum = 0.0, sumsq = 0.0;
    for (long long i = 0; i < n_samples; ++i) {
        CompactParam pu, pk;
        random_su2(pu);
        random_su2(pk);
        Mat2 u = make_k_complex(pu.theta, pu.alpha, pu.beta);
        Mat2 k = make_k_complex(pk.theta, pk.alpha, pk.beta);
        double cos_t = 0.5 * (k.a + k.d).real();
        cos_t = std::max(-1.0, std::min(1.0, cos_t));
        double x = (2.0 * m + 1.0) * su2_character(m, cos_t) * eval_chart(u.mul(k)) * eval_chart(u);
        sum += x;
        sumsq += x * x;
    }
    McProjection out;
    out.value = sum / double(n_samples);
    double var = std::max(0.0, sumsq / double(n_samples) - out.value * out.value);
    out.std_error = std::sqrt(var / double(n_samples));
    return out;
}

} // namespace cuspflow
