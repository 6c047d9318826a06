#include "cuspflow/lattice.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "cuspflow/quadrature.hpp"

namespace cuspflow {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr int kMaxReductionMoves = 10000;
constexpr double kBoundSlack = 1e-9;
} // namespace

double bianchi_domain_volume() {
    // volume of {|Re z| <= 1/2, 0 <= Im z <= 1/2, |z|^2 + h^2 >= 1} under
    // dx dy dh / h^3; the h-integral gives 1 / (2 (1 - x^2 - y^2))
    auto inner = [](double x) {
        return integrate_gl([x](double y) { return 0.5 / (1.0 - x * x - y * y); }, 0.0, 0.5, 64);
    };
    return integrate_gl(inner, -0.5, 0.5, 64);
}

LatticeSpec LatticeSpec::modular() {
    LatticeSpec L;
    L.kind = LatticeKind::ModularZ;
    L.factor = FactorKind::Real;
    L.regulator = 1.0;
    L.omega_measure = 1.0;
    L.covolume = kPi / 3.0;
    return L;
}

LatticeSpec LatticeSpec::bianchi() {
    LatticeSpec L;
    L.kind = LatticeKind::BianchiZi;
    L.factor = FactorKind::Complex;
    L.regulator = 0.5;              // det D with eta = 1/2
    L.omega_measure = 0.5;          // 2^{n-1} R |F_O| = 1/2
    // The unit stabilizer Gamma_inf cap K has order 2 in PSL2(Z[i]); with
    // |omega| taken literally as R |F_O|, the matching covolume is twice the
    // hyperbolic volume of the reduced domain. Validated against the residue
    // of the scattering constant and the Siegel mean (c0 = 3 / (4 Catalan)).
    L.covolume = 2.0 * bianchi_domain_volume();
    return L;
}

LatticeSpec LatticeSpec::gamma0(int N) {
    if (N < 1) throw ValidationError("gamma0: level must be >= 1");
    LatticeSpec L = modular();
    L.kind = LatticeKind::CongruenceSub;
    L.level = N;
    long long idx = N;
    int n = N;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            idx = idx / p * (p + 1);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) idx = idx / n * (n + 1);
    L.index_in_full = int(idx);
    L.cusp_index = 1; // the width-one translation n_1 lies in Gamma_0(N)
    L.covolume = L.index_in_full * kPi / 3.0;
    L.spectral_enabled = false;
    return L;
}

std::string LatticeSpec::to_json() const {
    nlohmann::json j;
    j["kind"] = kind == LatticeKind::ModularZ    ? "sl2z"
                : kind == LatticeKind::BianchiZi ? "sl2zi"
                                                 : "gamma0";
    j["level"] = level;
    j["mu"] = mu();
    j["regulator"] = regulator;
    j["omega_measure"] = omega_measure;
    j["covolume"] = covolume;
    j["c0"] = c0();
    j["index_in_full"] = index_in_full;
    j["cusp_index"] = cusp_index;
    j["spectral_enabled"] = spectral_enabled;
    j["volume_provenance"] = kind == LatticeKind::BianchiZi
                                 ? "2 * GL64x64 quadrature of the reduced domain"
                                 : "analytic";
    return j.dump();
}

LatticeSpec LatticeSpec::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    std::string k = j.at("kind").get<std::string>();
    LatticeSpec L;
    if (k == "sl2z") L = modular();
    else if (k == "sl2zi") L = bianchi();
    else if (k == "gamma0") L = gamma0(j.at("level").get<int>());
    else throw ValidationError("LatticeSpec: unknown kind " + k);
    return L;
}

// ---------------------------------------------------------------------------
// reduction

namespace {

// left multiplications used by the reduction moves
void apply_translation(Mat2& m, cplx q) { // n_{-q} * m
    m.a -= q * m.c;
    m.b -= q * m.d;
}
void apply_inversion(Mat2& m) { // S * m with S = [[0,-1],[1,0]]
    Mat2 r{-m.c, -m.d, m.a, m.b};
    m = r;
}
void apply_unit_i(Mat2& m) { // diag(i, -i) * m
    m.a *= cplx(0, 1);
    m.b *= cplx(0, 1);
    m.c *= cplx(0, -1);
    m.d *= cplx(0, -1);
}

} // namespace

double modular_reduce_height(double x, double y, int* moves) {
    int n = 0;
    for (; n < kMaxReductionMoves; ++n) {
        double q = std::nearbyint(x);
        x -= q;
        double nz = x * x + y * y;
        if (nz >= 1.0 - 1e-15) break;
        // z -> -1/z
        double inv = 1.0 / nz;
        x = -x * inv;
        y = y * inv;
    }
    if (n >= kMaxReductionMoves) throw NonTermination("modular reduction did not terminate");
    if (moves) *moves = n;
    return y;
}

double bianchi_reduce_height(cplx z, double h, int* moves) {
    int n = 0;
    for (; n < kMaxReductionMoves; ++n) {
        z = cplx(z.real() - std::nearbyint(z.real()), z.imag() - std::nearbyint(z.imag()));
        double nz = std::norm(z) + h * h;
        if (nz >= 1.0 - 1e-15) break;
        double inv = 1.0 / nz;
        z = -std::conj(z) * inv;
        h = h * inv;
    }
    if (n >= kMaxReductionMoves) throw NonTermination("bianchi reduction did not terminate");
    if (moves) *moves = n;
    return h;
}

ReducedPoint reduce(const GroupPoint& g, const LatticeSpec& L) {
    if (g.factors.size() != 1 || g.factors[0].kind != L.factor)
        throw ValidationError("reduce: lattice and group point kinds do not match");
    Mat2 m = g.factors[0].m;
    ReducedPoint out;
    int n = 0;
    if (L.factor == FactorKind::Real) {
        for (; n < kMaxReductionMoves; ++n) {
            double row2 = std::norm(m.c) + std::norm(m.d);
            double y = 1.0 / row2;
            double x = (m.a.real() * m.c.real() + m.b.real() * m.d.real()) * y;
            double q = std::nearbyint(x);
            if (q != 0.0) apply_translation(m, cplx(q, 0.0));
            x -= q;
            if (x * x + y * y >= 1.0 - 1e-15) break;
            apply_inversion(m);
        }
        if (n >= kMaxReductionMoves) throw NonTermination("modular reduction did not terminate");
        out.height = 1.0 / (std::norm(m.c) + std::norm(m.d));
    } else {
        for (; n < kMaxReductionMoves; ++n) {
            double row2 = std::norm(m.c) + std::norm(m.d);
            double h = 1.0 / row2;
            cplx z = (m.a * std::conj(m.c) + m.b * std::conj(m.d)) * h;
            cplx q(std::nearbyint(z.real()), std::nearbyint(z.imag()));
            if (q != cplx(0.0)) apply_translation(m, q);
            z -= q;
            if (std::norm(z) + h * h >= 1.0 - 1e-15) {
                if (z.imag() < -1e-15) apply_unit_i(m); // z -> -z, lands Im z >= 0
                break;
            }
            apply_inversion(m);
        }
        if (n >= kMaxReductionMoves) throw NonTermination("bianchi reduction did not terminate");
        out.height = 1.0 / (std::norm(m.c) + std::norm(m.d));
    }
    out.word_length = n;
    out.rep.factors.push_back({L.factor, m});
    return out;
}

double delta_point_modular(double x, double y) {
    double h = modular_reduce_height(x, y);
    return h > 1.0 ? std::log(h) : 0.0;
}

double delta_point_bianchi(cplx z, double h) {
    double hr = bianchi_reduce_height(z, h);
    return hr > 1.0 ? 2.0 * std::log(hr) : 0.0;
}

double delta(const GroupPoint& g, const LatticeSpec& L) {
    const Mat2& m = g.factors.at(0).m;
    double row2 = std::norm(m.c) + std::norm(m.d);
    if (L.factor == FactorKind::Real) {
        double y = 1.0 / row2;
        double x = (m.a.real() * m.c.real() + m.b.real() * m.d.real()) * y;
        return delta_point_modular(x, y);
    }
    double h = 1.0 / row2;
    cplx z = (m.a * std::conj(m.c) + m.b * std::conj(m.d)) * h;
    return delta_point_bianchi(z, h);
}

// ---------------------------------------------------------------------------
// coset enumeration

namespace {

// extended Euclid over Z[i] (covers Z as the zero-imaginary case):
// returns (u, v) with u a + v b = gcd(a, b)
std::pair<Gint, Gint> gint_ext_gcd(Gint a, Gint b) {
    Gint u0{1, 0}, v0{0, 0}, u1{0, 0}, v1{1, 0};
    while (!b.is_zero()) {
        Gint q = gint_div_round(a, b);
        Gint r = a - q * b;
        Gint u2 = u0 - q * u1, v2 = v0 - q * v1;
        a = b;
        b = r;
        u0 = u1;
        v0 = v1;
        u1 = u2;
        v1 = v2;
    }
    return {u0, v0};
}

struct RealEnumCtx {
    double ga, gb, gc, gd;
    double A, W, C;
};

void enumerate_real(const RealEnumCtx& E, const EnumWindow& win, int level,
                    const CosetVisitor& visit) {
    const double B = win.norm_bound * (1.0 + kBoundSlack);
    const double lo = win.row_min;
    const double hi = win.norm_bound;
    // identity coset (0, 1); c = 0 satisfies every congruence condition
    if (E.C >= lo && E.C <= hi)
        visit({Gint{0, 0}, Gint{1, 0}}, cplx(E.gc), cplx(E.gd), E.C);

    double c_max = std::sqrt(std::max(0.0, B * E.C));
    if (win.first_entry_bound >= 0.0 && std::abs(E.gd) > 1e-300) {
        double fb = win.first_entry_bound * (1.0 + kBoundSlack);
        double lin = E.C * (fb + std::abs(E.gc) * std::sqrt(B / E.C)) / std::abs(E.gd);
        c_max = std::min(c_max, lin);
    }
    long long cmax = (long long)std::floor(c_max + 1e-12);
    long long step = level;
    for (long long cc = step; cc <= cmax; cc += step) {
        double disc = E.C * B - double(cc) * double(cc);
        if (disc < 0) continue;
        double half = std::sqrt(disc) / E.C;
        double center = -E.W * double(cc) / E.C;
        double dlo = center - half, dhi = center + half;
        if (win.first_entry_bound >= 0.0 && std::abs(E.gc) > 1e-300) {
            double fb = win.first_entry_bound * (1.0 + kBoundSlack);
            double l1 = (-fb - cc * E.ga) / E.gc, l2 = (fb - cc * E.ga) / E.gc;
            dlo = std::max(dlo, std::min(l1, l2));
            dhi = std::min(dhi, std::max(l1, l2));
        }
        for (long long dd = (long long)std::ceil(dlo - 1e-12); dd <= (long long)std::floor(dhi + 1e-12); ++dd) {
            if (std::gcd(cc, std::llabs(dd)) != 1) continue;
            double cr = cc * E.ga + dd * E.gc;
            double dr = cc * E.gb + dd * E.gd;
            double q = cr * cr + dr * dr;
            if (q < lo || q > hi) continue;
            visit({Gint{cc, 0}, Gint{dd, 0}}, cplx(cr), cplx(dr), q);
        }
    }
}

struct CplxEnumCtx {
    cplx ga, gb, gc, gd;
    double A, C;
    cplx W;
};

void enumerate_cplx(const CplxEnumCtx& E, const EnumWindow& win, const CosetVisitor& visit) {
    const double B = win.norm_bound * (1.0 + kBoundSlack);
    const double lo = win.row_min;
    const double hi = win.norm_bound;
    if (E.C >= lo && E.C <= hi) visit({Gint{0, 0}, Gint{1, 0}}, E.gc, E.gd, E.C);

    double c_max = std::sqrt(std::max(0.0, B * E.C));
    const bool lin_on = win.first_entry_bound >= 0.0;
    const double fb = lin_on ? win.first_entry_bound * (1.0 + kBoundSlack) : 0.0;
    if (lin_on && std::abs(E.gd) > 1e-300) {
        double lin = E.C * (fb + std::abs(E.gc) * std::sqrt(B / E.C)) / std::abs(E.gd);
        c_max = std::min(c_max, lin);
    }
    const double c_max2 = c_max * c_max;
    long long cim_max = (long long)std::floor(c_max + 1e-12);
    const double gc_abs = std::abs(E.gc);
    for (long long ci = 0; ci <= cim_max; ++ci) {
        double rem = c_max2 - double(ci) * double(ci);
        if (rem < 0) break;
        long long cre_max = (long long)std::floor(std::sqrt(rem) + 1e-12);
        for (long long cr = 1; cr <= cre_max; ++cr) {
            Gint cc{cr, ci}; // canonical quadrant: Re > 0, Im >= 0
            double cnorm = double(cc.norm());
            double rad2 = (B - cnorm / E.C) / E.C;
            if (rad2 < 0) continue;
            cplx ccx(double(cc.re), double(cc.im));
            cplx center = -ccx * E.W / E.C;
            double rad = std::sqrt(rad2);

            bool lin_disc = false;
            cplx lcen;
            double lrad = 0.0;
            if (lin_on) {
                if (gc_abs > 1e-300) {
                    lin_disc = true;
                    lcen = -ccx * E.ga / E.gc;
                    lrad = fb / gc_abs;
                } else if (std::abs(ccx * E.ga) > fb) {
                    continue;
                }
            }

            double im_lo = center.imag() - rad, im_hi = center.imag() + rad;
            if (lin_disc) {
                im_lo = std::max(im_lo, lcen.imag() - lrad);
                im_hi = std::min(im_hi, lcen.imag() + lrad);
            }
            for (long long di = (long long)std::ceil(im_lo - 1e-12); di <= (long long)std::floor(im_hi + 1e-12); ++di) {
                double dy = double(di) - center.imag();
                double w2 = rad2 - dy * dy;
                if (w2 < 0) continue;
                double w = std::sqrt(w2);
                double re_lo = center.real() - w, re_hi = center.real() + w;
                if (lin_disc) {
                    double ly = double(di) - lcen.imag();
                    double lw2 = lrad * lrad - ly * ly;
                    if (lw2 < 0) continue;
                    double lw = std::sqrt(lw2);
                    re_lo = std::max(re_lo, lcen.real() - lw);
                    re_hi = std::min(re_hi, lcen.real() + lw);
                }
                for (long long dr = (long long)std::ceil(re_lo - 1e-12); dr <= (long long)std::floor(re_hi + 1e-12); ++dr) {
                    Gint dd{dr, di};
                    if (!gint_coprime(cc, dd)) continue;
                    cplx ddx(double(dd.re), double(dd.im));
                    cplx crow = ccx * E.ga + ddx * E.gc;
                    cplx drow = ccx * E.gb + ddx * E.gd;
                    double q = std::norm(crow) + std::norm(drow);
                    if (q < lo || q > hi) continue;
                    visit({cc, dd}, crow, drow, q);
                }
            }
        }
    }
}

} // namespace

std::array<Gint, 4> CosetRep::completed_matrix() const {
    auto [u, v] = gint_ext_gcd(d, c);
    Gint g = u * d + v * c; // a unit for coprime rows
    // divide by the unit: multiply by its conjugate when |g| = 1
    if (!g.is_unit()) throw ValidationError("completed_matrix: row is not coprime");
    Gint ginv = g.conj(); // units satisfy g * conj(g) = 1
    Gint a = u * ginv;
    Gint b = Gint{-1, 0} * v * ginv;
    // a d - b c = ginv (u d + v c) = 1
    return {a, b, c, d};
}

void for_each_coset(const GroupPoint& g, const LatticeSpec& L, const EnumWindow& win,
                    const CosetVisitor& visit) {
    if (win.norm_bound < win.row_min) return;
    const Mat2& m = g.factors.at(0).m;
    if (L.factor == FactorKind::Real) {
        RealEnumCtx E;
        E.ga = m.a.real();
        E.gb = m.b.real();
        E.gc = m.c.real();
        E.gd = m.d.real();
        E.A = E.ga * E.ga + E.gb * E.gb;
        E.W = E.ga * E.gc + E.gb * E.gd;
        E.C = E.gc * E.gc + E.gd * E.gd;
        int level = L.kind == LatticeKind::CongruenceSub ? L.level : 1;
        enumerate_real(E, win, level, visit);
    } else {
        if (L.kind == LatticeKind::CongruenceSub)
            throw UnsupportedLattice("congruence subgroups are implemented over ModularZ only");
        CplxEnumCtx E;
        E.ga = m.a;
        E.gb = m.b;
        E.gc = m.c;
        E.gd = m.d;
        E.A = std::norm(m.a) + std::norm(m.b);
        E.W = m.a * std::conj(m.c) + m.b * std::conj(m.d);
        E.C = std::norm(m.c) + std::norm(m.d);
        enumerate_cplx(E, win, visit);
    }
}

std::vector<CosetRep> enumerate_cosets(const GroupPoint& g, const LatticeSpec& L,
                                       double norm_bound) {
    if (norm_bound < 1.0) throw ValidationError("enumerate_cosets: norm_bound must be >= 1");
    std::vector<CosetRep> out;
    EnumWindow win;
    win.norm_bound = norm_bound;
    LatticeSpec base = L;
    if (L.kind == LatticeKind::CongruenceSub) base = LatticeSpec::modular();
    for_each_coset(g, base, win, [&](const CosetRep& r, cplx, cplx, double) { out.push_back(r); });
    return out;
}

std::vector<CosetRep> subgroup_cosets(const GroupPoint& g, const LatticeSpec& L_sub,
                                      double norm_bound) {
    if (L_sub.kind != LatticeKind::CongruenceSub)
        throw ValidationError("subgroup_cosets: lattice is not a congruence subgroup");
    std::vector<CosetRep> out;
    EnumWindow win;
    win.norm_bound = norm_bound;
    for_each_coset(g, L_sub, win, [&](const CosetRep& r, cplx, cplx, double) { out.push_back(r); });
    return out;
}

// ---------------------------------------------------------------------------
// Haar sampling

HaarPoint haar_sample_point(const LatticeSpec& L, RngStream& rng) {
    HaarPoint p;
    if (L.factor == FactorKind::Real) {
        // base density dx dy / y^2 on the standard domain; propose y from the
        // 1/y^2 tail above sqrt(3)/2 and reject below the unit circle
        const double y0 = std::sqrt(3.0) / 2.0;
        for (;;) {
            double x = rng.uniform(-0.5, 0.5);
            double y = y0 / (1.0 - rng.uniform01());
            if (x * x + y * y >= 1.0) {
                p.z = cplx(x, y);
                p.h = y;
                break;
            }
        }
        p.k.theta = rng.uniform(0.0, kTwoPi);
    } else {
        const double h0 = std::sqrt(0.5);
        for (;;) {
            double x = rng.uniform(-0.5, 0.5);
            double y = rng.uniform(0.0, 0.5);
            double h = h0 / std::sqrt(1.0 - rng.uniform01());
            if (x * x + y * y + h * h >= 1.0) {
                p.z = cplx(x, y);
                p.h = h;
                break;
            }
        }
        p.k.theta = std::asin(std::sqrt(rng.uniform01()));
        p.k.alpha = rng.uniform(0.0, kTwoPi);
        p.k.beta = rng.uniform(0.0, kTwoPi);
    }
    return p;
}

GroupPoint group_point_from(const LatticeSpec& L, const HaarPoint& p) {
    FactorCoords fc;
    fc.kind = L.factor;
    fc.x = L.factor == FactorKind::Real ? cplx(p.z.real(), 0.0) : p.z;
    fc.t = std::log(p.h);
    fc.k = p.k;
    IwasawaCoords c;
    c.factors.push_back(fc);
    return compose(c);
}

GroupPoint haar_sample(const LatticeSpec& L, RngStream& rng) {
    return group_point_from(L, haar_sample_point(L, rng));
}

} // namespace cuspflow
