#include "cuspflow/group.hpp"

#include <cmath>

#include "cuspflow/rng.hpp"

namespace cuspflow {

namespace {
constexpr double two_pi = 6.283185307179586476925286766559;

double wrap_2pi(double a) {
    a = std::fmod(a, two_pi);
    if (a < 0) a += two_pi;
    return a;
}
} // namespace

GroupPoint GroupPoint::mul(const GroupPoint& o) const {
    GroupPoint r;
    r.factors.resize(factors.size());
    for (std::size_t j = 0; j < factors.size(); ++j) {
        r.factors[j].kind = factors[j].kind;
        r.factors[j].m = factors[j].m.mul(o.factors[j].m);
    }
    return r;
}

void GroupPoint::renormalize() {
    for (auto& f : factors) {
        cplx det = f.m.det();
        if (std::abs(det - cplx(1.0)) > 1e-12) {
            cplx s = 1.0 / std::sqrt(det);
            f.m.a *= s;
            f.m.b *= s;
            f.m.c *= s;
            f.m.d *= s;
        }
    }
}

double GroupPoint::max_abs_diff(const GroupPoint& o) const {
    double m = 0.0;
    for (std::size_t j = 0; j < factors.size(); ++j) {
        m = std::max(m, std::abs(factors[j].m.a - o.factors[j].m.a));
        m = std::max(m, std::abs(factors[j].m.b - o.factors[j].m.b));
        m = std::max(m, std::abs(factors[j].m.c - o.factors[j].m.c));
        m = std::max(m, std::abs(factors[j].m.d - o.factors[j].m.d));
    }
    return m;
}

FlowDirection::FlowDirection(std::vector<double> yv) : y(std::move(yv)) {
    if (y.empty()) throw ValidationError("FlowDirection: empty direction");
    double ymax = 0.0;
    for (double v : y) {
        if (v < 0.0 || v > 1.0) throw ValidationError("FlowDirection: entries must lie in [0,1]");
        ymax = std::max(ymax, v);
    }
    if (std::abs(ymax - 1.0) > 1e-12)
        throw ValidationError("FlowDirection: max_j y_j must equal 1");
}

Mat2 make_n(cplx x) { return {1.0, x, 0.0, 1.0}; }

Mat2 make_a(double t) { return {std::exp(t / 2.0), 0.0, 0.0, std::exp(-t / 2.0)}; }

Mat2 make_k_real(double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    return {c, s, -s, c};
}

Mat2 make_k_complex(double theta, double alpha, double beta) {
    double c = std::cos(theta), s = std::sin(theta);
    cplx ea = std::polar(1.0, alpha), eb = std::polar(1.0, beta);
    return {c * ea, s * eb, -s * std::conj(eb), c * std::conj(ea)};
}

Mat2 compose_factor(const FactorCoords& fc) {
    Mat2 na = {std::exp(fc.t / 2.0), fc.x * std::exp(-fc.t / 2.0), 0.0, std::exp(-fc.t / 2.0)};
    Mat2 k = fc.kind == FactorKind::Real ? make_k_real(fc.k.theta)
                                         : make_k_complex(fc.k.theta, fc.k.alpha, fc.k.beta);
    return na.mul(k);
}

FactorCoords iwasawa_factor(FactorKind kind, const Mat2& m) {
    FactorCoords fc;
    fc.kind = kind;
    double row2 = std::norm(m.c) + std::norm(m.d); // |c|^2 + |d|^2 = e^{-t}
    fc.t = -std::log(row2);
    fc.x = (m.a * std::conj(m.c) + m.b * std::conj(m.d)) / row2;
    if (kind == FactorKind::Real) {
        fc.x = cplx(fc.x.real(), 0.0);
        fc.k.theta = wrap_2pi(std::atan2(-m.c.real(), m.d.real()));
    } else {
        // bottom row of the SU(2) part is e^{t/2} (c, d); k = [[ka, kb], [-conj kb, conj ka]]
        double et2 = std::exp(fc.t / 2.0);
        cplx ka = et2 * std::conj(m.d);
        cplx kb = -et2 * std::conj(m.c);
        fc.k.theta = std::atan2(std::abs(kb), std::abs(ka));
        // alpha/beta degenerate at theta in {0, pi/2}: undetermined angle set to 0
        fc.k.alpha = std::abs(ka) > 1e-14 ? wrap_2pi(std::arg(ka)) : 0.0;
        fc.k.beta = std::abs(kb) > 1e-14 ? wrap_2pi(std::arg(kb)) : 0.0;
    }
    return fc;
}

IwasawaCoords iwasawa_decompose(const GroupPoint& g) {
    IwasawaCoords c;
    c.factors.reserve(g.factors.size());
    for (const auto& f : g.factors) c.factors.push_back(iwasawa_factor(f.kind, f.m));
    return c;
}

GroupPoint compose(const IwasawaCoords& c) {
    GroupPoint g;
    g.factors.resize(c.factors.size());
    for (std::size_t j = 0; j < c.factors.size(); ++j) {
        g.factors[j].kind = c.factors[j].kind;
        g.factors[j].m = compose_factor(c.factors[j]);
    }
    return g;
}

GroupPoint unipotent(double s, const FlowDirection& y, const std::vector<FactorKind>& kinds) {
    if (kinds.size() != y.y.size())
        throw ValidationError("unipotent: direction/kind length mismatch");
    GroupPoint g;
    g.factors.resize(kinds.size());
    for (std::size_t j = 0; j < kinds.size(); ++j) {
        g.factors[j].kind = kinds[j];
        g.factors[j].m = {1.0, 0.0, s * y.y[j], 1.0};
    }
    return g;
}

double haar_density(const IwasawaCoords& c) {
    double e = 0.0;
    for (const auto& f : c.factors) e += mu_of(f.kind) * f.t;
    return std::exp(-e);
}

double compact_density(FactorKind kind, const CompactParam& k) {
    if (kind == FactorKind::Real) return 1.0 / two_pi;
    return std::abs(std::sin(2.0 * k.theta)) / (4.0 * 9.8696044010893586188344909998762);
}

CuspCoords cusp_coords(const GroupPoint& g, const std::vector<std::vector<double>>& D_columns,
                       double regulator) {
    std::size_t n = g.factors.size();
    if (D_columns.size() != n) throw ValidationError("cusp_coords: D must be n x n");
    for (const auto& col : D_columns)
        if (col.size() != n) throw ValidationError("cusp_coords: D must be n x n");
    // last column must be eta = (1/n)(mu_1^{-1},...,mu_n^{-1})
    for (std::size_t j = 0; j < n; ++j) {
        double eta_j = 1.0 / (double(n) * mu_of(g.factors[j].kind));
        if (std::abs(D_columns[n - 1][j] - eta_j) > 1e-12)
            throw ValidationError("cusp_coords: last column of D must be eta");
    }

    IwasawaCoords iw = iwasawa_decompose(g);

    // solve D tvec = t_iwasawa by Gaussian elimination (n is tiny)
    std::vector<std::vector<double>> A(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) A[i][j] = D_columns[j][i];
        A[i][n] = iw.factors[i].t;
    }
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        if (std::abs(A[piv][col]) < 1e-14) throw SingularD("cusp_coords: det(D) = 0");
        if (piv != col) {
            std::swap(A[piv], A[col]);
            det = -det;
        }
        det *= A[col][col];
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            double f = A[r][col] / A[col][col];
            for (std::size_t j = col; j <= n; ++j) A[r][j] -= f * A[col][j];
        }
    }
    (void)det;

    CuspCoords cc;
    cc.tvec.resize(n);
    for (std::size_t i = 0; i < n; ++i) cc.tvec[i] = A[i][n] / A[i][i];
    cc.tn = cc.tvec[n - 1];
    cc.x.resize(n);
    cc.k.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        cc.x[j] = iw.factors[j].x;
        cc.k[j] = iw.factors[j].k;
    }
    cc.haar_density = regulator * std::exp(-cc.tn);
    return cc;
}

GroupPoint random_group_point(FactorKind kind, RngStream& rng, std::size_t n) {
    // product of two generic n a k blocks gives a well-mixed element
    auto rand_coords = [&](FactorCoords& fc) {
        fc.kind = kind;
        fc.t = rng.uniform(-2.5, 2.5);
        if (kind == FactorKind::Real) {
            fc.x = cplx(rng.normal(), 0.0);
            fc.k.theta = rng.uniform(0.0, two_pi);
        } else {
            fc.x = cplx(rng.normal(), rng.normal());
            fc.k.theta = std::asin(std::sqrt(rng.uniform01()));
            fc.k.alpha = rng.uniform(0.0, two_pi);
            fc.k.beta = rng.uniform(0.0, two_pi);
        }
    };
    IwasawaCoords c1, c2;
    c1.factors.resize(n);
    c2.factors.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        rand_coords(c1.factors[j]);
        rand_coords(c2.factors[j]);
    }
    return compose(c1).mul(compose(c2));
}

} // namespace cuspflow
