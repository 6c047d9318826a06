#include "cuspflow/operators.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include <json.hpp>

#include "cuspflow/errors.hpp"
#include "cuspflow/rng.hpp"

namespace cuspflow {

namespace {

cplx phi_real(cplx s, int m, double x1, double x2) {
    cplx w(x1, x2);
    double rho = x1 * x1 + x2 * x2;
    cplx wpow = m >= 0 ? std::pow(w, 2 * m) : 1.0 / std::pow(w, -2 * m);
    return wpow * std::pow(cplx(rho), -(s + double(m)));
}

// Richardson-improved central difference along coordinate `axis` of a map
// R^2 -> C
cplx fd1(const std::function<cplx(double, double)>& f, double x1, double x2, int axis, double h) {
    if (h < 1e-12) throw StepSizeUnderflow("finite difference step underflow");
    auto d = [&](double hh) {
        double a1 = x1 + (axis == 0 ? hh : 0.0), a2 = x2 + (axis == 1 ? hh : 0.0);
        double b1 = x1 - (axis == 0 ? hh : 0.0), b2 = x2 - (axis == 1 ? hh : 0.0);
        return (f(a1, a2) - f(b1, b2)) / (2.0 * hh);
    };
    return (4.0 * d(h / 2.0) - d(h)) / 3.0;
}

cplx phi_cplx(cplx s, int m, cplx z1, cplx z2) {
    cplx w = z1 * std::conj(z2);
    double rho = std::norm(z1) + std::norm(z2);
    cplx wpow = std::pow(w, m);
    return wpow * std::pow(cplx(rho), -(2.0 * s + double(m)));
}

// gradient of a map R^4 -> C (coordinates x1, y1, x2, y2)
using F4 = std::function<cplx(const std::array<double, 4>&)>;

cplx fd1_4(const F4& f, std::array<double, 4> p, int axis, double h) {
    auto d = [&](double hh) {
        auto a = p, b = p;
        a[axis] += hh;
        b[axis] -= hh;
        return (f(a) - f(b)) / (2.0 * hh);
    };
    return (4.0 * d(h / 2.0) - d(h)) / 3.0;
}

cplx fd2_4(const F4& f, std::array<double, 4> p, int ax1, int ax2, double h) {
    if (ax1 == ax2) {
        auto d = [&](double hh) {
            auto a = p, b = p;
            a[ax1] += hh;
            b[ax1] -= hh;
            return (f(a) - 2.0 * f(p) + f(b)) / (hh * hh);
        };
        return (4.0 * d(h / 2.0) - d(h)) / 3.0;
    }
    auto d = [&](double hh) {
        auto pp = p, pm = p, mp = p, mm = p;
        pp[ax1] += hh;
        pp[ax2] += hh;
        pm[ax1] += hh;
        pm[ax2] -= hh;
        mp[ax1] -= hh;
        mp[ax2] += hh;
        mm[ax1] -= hh;
        mm[ax2] -= hh;
        return (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * hh * hh);
    };
    return (4.0 * d(h / 2.0) - d(h)) / 3.0;
}

} // namespace

LadderResidual check_raising_real(cplx s, int m, int sign, int n_points, std::uint64_t seed) {
    RngStream rng(seed, 0);
    LadderResidual out;
    out.points = n_points;
    auto f = [&](double x1, double x2) { return phi_real(s, m, x1, x2); };
    const double h = 1e-4;
    for (int i = 0; i < n_points; ++i) {
        // annulus away from the origin
        double r = rng.uniform(0.7, 1.5), a = rng.uniform(0.0, 6.283185307179586);
        double x1 = r * std::cos(a), x2 = r * std::sin(a);
        cplx d1 = fd1(f, x1, x2, 0, h);
        cplx d2 = fd1(f, x1, x2, 1, h);
        cplx lhs;
        if (sign > 0)
            lhs = x1 * d1 - x2 * d2 + cplx(0, 1) * (x1 * d2 + x2 * d1);
        else
            lhs = x1 * d1 - x2 * d2 - cplx(0, 1) * (x1 * d2 + x2 * d1);
        cplx rhs = -2.0 * (s + double(sign * m)) * phi_real(s, m + sign, x1, x2);
        double scale = std::max(std::abs(rhs), std::abs(lhs));
        if (scale < 1e-14) continue;
        out.max_relative = std::max(out.max_relative, std::abs(lhs - rhs) / scale);
    }
    return out;
}

ProportionalityReport check_raising_complex(cplx s, int m, int n_points, std::uint64_t seed) {
    RngStream rng(seed, 1);
    std::vector<cplx> ratios;
    ratios.reserve(n_points);
    const double h = 1e-4;
    for (int i = 0; i < n_points; ++i) {
        std::array<double, 4> p;
        for (int a = 0; a < 4; ++a) p[a] = rng.uniform(-1.2, 1.2);
        double n1 = std::hypot(p[0], p[1]), n2 = std::hypot(p[2], p[3]);
        if (n1 < 0.4 || n2 < 0.4) {
            --i;
            continue;
        }
        F4 f = [&](const std::array<double, 4>& q) {
            return phi_cplx(s, m, cplx(q[0], q[1]), cplx(q[2], q[3]));
        };
        // a+ = z1 d/dz2, d/dz2 = (d/dx2 - i d/dy2)/2
        cplx dz2 = 0.5 * (fd1_4(f, p, 2, h) - cplx(0, 1) * fd1_4(f, p, 3, h));
        cplx lhs = cplx(p[0], p[1]) * dz2;
        cplx denom = (2.0 * s + double(m)) * phi_cplx(s, m + 1, cplx(p[0], p[1]), cplx(p[2], p[3]));
        ratios.push_back(lhs / denom);
    }
    ProportionalityReport rep;
    rep.points = int(ratios.size());
    cplx mean = 0.0;
    for (auto r : ratios) mean += r;
    mean /= double(ratios.size());
    rep.mean_ratio = mean;
    for (auto r : ratios) rep.max_deviation = std::max(rep.max_deviation, std::abs(r - mean));
    return rep;
}

CasimirReport check_casimir_complex(double s, int m, int n_points, std::uint64_t seed) {
    RngStream rng(seed, 2);
    CasimirReport rep;
    const double h = 2e-3;
    std::vector<cplx> eigs;
    for (int i = 0; i < n_points; ++i) {
        std::array<double, 4> p;
        for (int a = 0; a < 4; ++a) p[a] = rng.uniform(-1.2, 1.2);
        if (std::hypot(p[0], p[1]) < 0.5 || std::hypot(p[2], p[3]) < 0.5) {
            --i;
            continue;
        }
        F4 f = [&](const std::array<double, 4>& q) {
            return phi_cplx(cplx(s), m, cplx(q[0], q[1]), cplx(q[2], q[3]));
        };
        // dbar_j = (d/dx_j + i d/dy_j)/2 ; Euler operator E = zbar1 dbar1 + zbar2 dbar2;
        // the displayed Casimir is E^2 + 2E = sum_{jk} zbar_j zbar_k dbar_j dbar_k + 3 E
        cplx zb1 = std::conj(cplx(p[0], p[1]));
        cplx zb2 = std::conj(cplx(p[2], p[3]));
        cplx db1 = 0.5 * (fd1_4(f, p, 0, h) + cplx(0, 1) * fd1_4(f, p, 1, h));
        cplx db2 = 0.5 * (fd1_4(f, p, 2, h) + cplx(0, 1) * fd1_4(f, p, 3, h));
        auto dbar2 = [&](int j, int k) {
            // dbar_j dbar_k from real second partials
            int xj = j == 0 ? 0 : 2, yj = xj + 1;
            int xk = k == 0 ? 0 : 2, yk = xk + 1;
            cplx dxx = fd2_4(f, p, xj, xk, h);
            cplx dxy = fd2_4(f, p, xj, yk, h);
            cplx dyx = fd2_4(f, p, yj, xk, h);
            cplx dyy = fd2_4(f, p, yj, yk, h);
            return 0.25 * (dxx + cplx(0, 1) * dxy + cplx(0, 1) * dyx - dyy);
        };
        cplx quad = zb1 * zb1 * dbar2(0, 0) + zb2 * zb2 * dbar2(1, 1) +
                    2.0 * zb1 * zb2 * dbar2(0, 1);
        cplx omega = quad + 3.0 * (zb1 * db1 + zb2 * db2);
        cplx val = omega / f(p);
        eigs.push_back(val);
    }
    cplx mean = 0.0;
    for (auto e : eigs) mean += e;
    mean /= double(eigs.size());
    rep.mean_eigenvalue = mean;
    for (auto e : eigs) rep.max_deviation = std::max(rep.max_deviation, std::abs(e - mean));
    rep.points = int(eigs.size());
    double ref = 4.0 * s * (1.0 - s);
    rep.sign = mean.real() * ref > 0 ? +1 : -1;
    return rep;
}

std::string OperatorIdentityReport::to_json() const {
    nlohmann::json j;
    j["real_max_residual"] = real_max_residual;
    j["complex_ratio_deviation"] = complex_ratio_deviation;
    j["casimir_deviation"] = casimir_deviation;
    j["casimir_eigenvalue"] = {casimir_eigenvalue.real(), casimir_eigenvalue.imag()};
    j["casimir_sign"] = casimir_sign;
    return j.dump();
}

OperatorIdentityReport operator_identity_check(std::uint64_t seed) {
    OperatorIdentityReport rep;
    for (double sr : {0.6, 0.75}) {
        for (int m = 0; m <= 3; ++m) {
            for (int sign : {+1, -1}) {
                auto r = check_raising_real(cplx(sr), m, sign, 100, seed + m);
                rep.real_max_residual = std::max(rep.real_max_residual, r.max_relative);
            }
        }
    }
    // pooled ratios across s must agree after dividing by (2s+m)
    cplx pooled_ref;
    bool first = true;
    for (double sr : {0.6, 0.8}) {
        for (int m = 0; m <= 2; ++m) {
            auto r = check_raising_complex(cplx(sr), m, 60, seed + 7 * m);
            rep.complex_ratio_deviation = std::max(rep.complex_ratio_deviation, r.max_deviation);
            if (first) {
                pooled_ref = r.mean_ratio;
                first = false;
            } else {
                rep.complex_ratio_deviation =
                    std::max(rep.complex_ratio_deviation, std::abs(r.mean_ratio - pooled_ref));
            }
        }
    }
    auto c = check_casimir_complex(0.7, 1, 40, seed + 100);
    rep.casimir_deviation = c.max_deviation;
    rep.casimir_eigenvalue = c.mean_eigenvalue;
    rep.casimir_sign = c.sign;
    return rep;
}

} // namespace cuspflow
