#include "cuspflow/spectral.hpp"

#include <cmath>

#include <json.hpp>

#include "cuspflow/weights.hpp"

namespace cuspflow {

namespace {

// weight-series truncation control: beyond the stored weights the tail is
// bounded through w_m <= C/(m+1)^4
double weight_tail_bound(const TestFunction& f, double p_exponent) {
    double tail = 0.0;
    int M = f.m_max();
    // sum_{m > M} C (m+1)^{p-4}; p < 3 so the series converges fast
    double c = f.weight_tail_coeff;
    for (int m = M + 1; m <= M + 2000; ++m) {
        double term = c * std::pow(m + 1.0, p_exponent - 4.0);
        tail += term * f.mult(m);
        if (term < 1e-22) break;
    }
    return tail;
}

} // namespace

double mf_eval(const TestFunction& f, double s) {
    if (!(s > 0.5 && s <= 1.0 + 1e-12)) throw ValidationError("mf_eval: s must lie in (1/2, 1]");
    if (f.weights.empty()) throw ValidationError("mf_eval: weight table not built");
    double lap = std::norm(laplace_transform(f.v, cplx(s)));
    double head = 0.0;
    cplx p = 1.0;
    for (int m = 0; m <= f.m_max(); ++m) {
        if (m > 0) p = pm_step(p, m - 1, cplx(s), f.kind);
        head += f.mult(m) * p.real() * f.weights[m];
    }
    double p_exp = f.kind == FactorKind::Real ? (1.0 - 2.0 * s) : (2.0 - 4.0 * s);
    double tail = weight_tail_bound(f, p_exp);
    if (head > 0 && tail > 1e-6 * head)
        throw TruncationFailure("mf_eval: weight tail exceeds 1e-6 of head");
    return head * lap;
}

double mf_endpoint_slope(const TestFunction& f) {
    double lap = std::norm(laplace_transform(f.v, cplx(1.0)));
    double acc = 0.0;
    for (int m = 1; m <= f.m_max(); ++m)
        acc += f.mult(m) * f.weights[m] * pm_pole_slope(m, f.kind);
    return acc * lap;
}

SpectralNormReport spectral_theta_norm(const TestFunction& f, const ScatteringEvaluator& S,
                                       const LatticeSpec& L) {
    if (f.kind != L.factor) throw ValidationError("spectral_theta_norm: kind mismatch");
    if (f.weights.empty()) throw ValidationError("spectral_theta_norm: weight table not built");
    SpectralNormReport rep;
    const double c0 = L.c0();

    LineGrid grid = build_line_grid(f.v);
    rep.line_radius = grid.radius;

    // A and the C(1/2+ir) values are shared across weights; P_m advances by
    // the one-step recurrence on the whole grid
    double A = 0.0;
    std::vector<cplx> cvals(grid.r.size());
    for (std::size_t i = 0; i < grid.r.size(); ++i) {
        A += grid.w[i] * std::norm(grid.vhat_half[i]);
        cvals[i] = S(cplx(0.5, grid.r[i]));
    }

    std::vector<cplx> p(grid.r.size(), 1.0);
    double sum_w = 0.0, sum_wA = 0.0;
    cplx cross = 0.0;
    for (int m = 0; m <= f.m_max(); ++m) {
        if (m > 0)
            for (std::size_t i = 0; i < p.size(); ++i)
                p[i] = pm_step(p[i], m - 1, cplx(0.5, grid.r[i]), f.kind);
        double w = f.weights[m] * f.mult(m);
        if (w == 0.0) continue;
        // cross integrand vhat(r-i/2) conj(vhat(-r-i/2)) = vhat(r-i/2)^2 for real v
        cplx bm = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i)
            bm += grid.w[i] * grid.vhat_half[i] * grid.vhat_half[i] * cvals[i] * p[i];
        sum_w += w;
        sum_wA += w * A;
        cross += w * bm;
    }
    rep.m_used = f.m_max();
    rep.weight_tail = weight_tail_bound(f, 0.0) / std::max(sum_w, 1e-300);

    rep.l2_term = c0 * sum_wA;
    rep.cross_term = c0 * cross.real();
    rep.cross_imag = c0 * cross.imag();

    double total = rep.l2_term + rep.cross_term;
    double pole_sum_exceptional = 0.0;
    for (const Pole& pj : S.poles) {
        PoleContribution pc;
        pc.s = pj.s;
        pc.residue = pj.residue;
        pc.mf_value = mf_eval(f, pj.s);
        pc.contribution = c0 * pj.residue * pc.mf_value;
        total += pc.contribution;
        if (pj.s < 1.0) pole_sum_exceptional += pc.contribution;
        rep.pole_terms.push_back(pc);
    }
    rep.total = total;

    // positive-f bracketing assembled from independently computed norms
    double l1 = f.norm_l1(), l2sq = f.norm_l2sq();
    rep.lower = c0 * c0 * l1 * l1 + pole_sum_exceptional;
    rep.upper = 2.0 * c0 * l2sq + c0 * c0 * l1 * l1 + pole_sum_exceptional;
    double slack = 1e-6 * std::max(1.0, rep.upper);
    rep.bracket_ok = !f.positive || (rep.total >= rep.lower - slack && rep.total <= rep.upper + slack);
    return rep;
}

std::string SpectralNormReport::to_json() const {
    nlohmann::json j;
    j["l2_term"] = l2_term;
    j["cross_term"] = cross_term;
    j["cross_imag"] = cross_imag;
    j["total"] = total;
    j["lower"] = lower;
    j["upper"] = upper;
    j["bracket_ok"] = bracket_ok;
    j["weight_tail"] = weight_tail;
    j["line_radius"] = line_radius;
    j["m_used"] = m_used;
    auto arr = nlohmann::json::array();
    for (const auto& p : pole_terms) {
        arr.push_back({{"s", p.s}, {"residue", p.residue}, {"mf", p.mf_value},
                       {"contribution", p.contribution}});
    }
    j["pole_terms"] = arr;
    return j.dump();
}

} // namespace cuspflow
