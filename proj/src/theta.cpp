#include "cuspflow/theta.hpp"

#include <cmath>

#include <json.hpp>

#include "cuspflow/parallel.hpp"

namespace cuspflow {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kSlack = 1e-9;

struct McAccum {
    double sum = 0.0, sumsq = 0.0;
    long long n = 0;
};

McEstimate finalize(const McAccum& acc, double scale, long long n_total, std::uint64_t seed) {
    McEstimate est;
    est.n_samples = n_total;
    est.seed = seed;
    double mean = acc.sum / double(n_total);
    double var = std::max(0.0, acc.sumsq / double(n_total) - mean * mean);
    est.mean = scale * mean;
    est.std_error = scale * std::sqrt(var / double(n_total));
    return est;
}

constexpr long long kBlock = 4096;

McEstimate run_blocks(long long n_samples, std::uint64_t seed, int n_workers, double scale,
                      const std::function<double(RngStream&)>& sample_fn) {
    long long n_blocks = (n_samples + kBlock - 1) / kBlock;
    McAccum total = parallel_blocks<McAccum>(
        std::size_t(n_blocks), n_workers,
        [&](std::size_t b) {
            RngStream rng(seed, b);
            long long lo = (long long)b * kBlock;
            long long hi = std::min(n_samples, lo + kBlock);
            McAccum acc;
            for (long long i = lo; i < hi; ++i) {
                double x = sample_fn(rng);
                acc.sum += x;
                acc.sumsq += x * x;
                ++acc.n;
            }
            return acc;
        },
        McAccum{},
        [](McAccum a, const McAccum& b) {
            a.sum += b.sum;
            a.sumsq += b.sumsq;
            a.n += b.n;
            return a;
        });
    return finalize(total, scale, n_samples, seed);
}

} // namespace

std::string McEstimate::to_json() const {
    nlohmann::json j;
    j["value"] = mean;
    j["se"] = std_error;
    j["n"] = n_samples;
    j["seed"] = seed;
    return j.dump();
}

ThetaValue theta_eval(const TestFunction& f, const GroupPoint& g, const LatticeSpec& L) {
    if (f.kind != L.factor) throw ValidationError("theta_eval: function/lattice kind mismatch");
    const double mu = L.mu();
    EnumWindow win;
    win.row_min = (1.0 - kSlack);                          // t_n <= 0
    win.norm_bound = std::exp(-f.v.t_min / mu) * (1.0 + kSlack); // t_n >= t_min
    double smax = f.kind == FactorKind::Real ? std::sin(std::min(f.theta_max, 1.5)) : f.sin_theta_max;
    if (smax > 0.0 && smax < 0.99) win.first_entry_bound = smax * std::sqrt(win.norm_bound);

    ThetaValue out;
    out.norm_bound_used = win.norm_bound;
    double acc = 0.0;
    long long terms = 0;
    if (f.kind == FactorKind::Real) {
        for_each_coset(g, L, win, [&](const CosetRep&, cplx cr, cplx dr, double q) {
            double t_n = -std::log(q);
            double theta = std::atan2(-cr.real(), dr.real());
            double val = f.eval_real(t_n, theta);
            if (val != 0.0) {
                acc += val;
                ++terms;
            }
        });
    } else {
        for_each_coset(g, L, win, [&](const CosetRep&, cplx cr, cplx dr, double q) {
            double t_n = -2.0 * std::log(q);
            double ac = std::abs(cr);
            double st = ac / std::sqrt(q);
            double delta = 0.0;
            if (ac > 1e-14) {
                delta = std::arg(cr) - std::arg(dr) - kPi;
                while (delta > kPi) delta -= kTwoPi;
                while (delta <= -kPi) delta += kTwoPi;
            }
            double val = f.eval_complex(t_n, st, delta);
            if (val != 0.0) {
                acc += val;
                ++terms;
            }
        });
    }
    out.value = acc;
    out.terms_used = terms;
    return out;
}

McEstimate direct_theta_norm(const TestFunction& f, const LatticeSpec& L, long long n_samples,
                             std::uint64_t seed, int n_workers) {
    if (f.kind != L.factor) throw ValidationError("direct_theta_norm: kind mismatch");
    if (n_samples < 1000) throw ValidationError("direct_theta_norm: need n_samples >= 1000");
    const double mu = L.mu();
    const double t_min = f.v.t_min;
    if (!(t_min < 0.0)) throw InsufficientSupport("direct_theta_norm: empty support");

    const double z_t = std::exp(-t_min) - 1.0;
    double z_k;
    if (f.kind == FactorKind::Real) {
        z_k = 2.0 * f.theta_max / kPi;
    } else {
        z_k = f.sin_theta_max * f.sin_theta_max * f.delta_max / kPi;
    }
    const double scale = (L.regulator / L.covolume) * z_t * z_k;

    auto one_sample = [&, mu, t_min](RngStream& rng) {
        double u = rng.uniform01();
        double t_n = -std::log(std::exp(-t_min) - u * (std::exp(-t_min) - 1.0));
        FactorCoords fc;
        fc.kind = f.kind;
        fc.t = t_n / mu;
        double fval;
        if (f.kind == FactorKind::Real) {
            double theta = rng.uniform(-f.theta_max, f.theta_max);
            fc.x = cplx(rng.uniform01(), 0.0);
            fc.k.theta = theta;
            fval = f.eval_real(t_n, theta);
        } else {
            double st = f.sin_theta_max * std::sqrt(rng.uniform01());
            double theta = std::asin(st);
            double delta = rng.uniform(-f.delta_max, f.delta_max);
            double sigma = rng.uniform(0.0, kTwoPi);
            fc.x = cplx(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5));
            fc.k.theta = theta;
            fc.k.alpha = 0.5 * (sigma + delta);
            fc.k.beta = 0.5 * (sigma - delta);
            fval = f.eval_complex(t_n, st, delta);
        }
        if (fval == 0.0) return 0.0;
        IwasawaCoords ic;
        ic.factors.push_back(fc);
        GroupPoint g = compose(ic);
        return fval * theta_eval(f, g, L).value;
    };
    return run_blocks(n_samples, seed, n_workers, scale, one_sample);
}

McEstimate siegel_mean(const TestFunction& f, const LatticeSpec& L, long long n_samples,
                       std::uint64_t seed, int n_workers) {
    auto one_sample = [&](RngStream& rng) {
        GroupPoint g = haar_sample(L, rng);
        return theta_eval(f, g, L).value;
    };
    return run_blocks(n_samples, seed, n_workers, 1.0, one_sample);
}

McEstimate folded_theta_norm(const TestFunction& f, const LatticeSpec& L, long long n_samples,
                             std::uint64_t seed, int n_workers) {
    auto one_sample = [&](RngStream& rng) {
        GroupPoint g = haar_sample(L, rng);
        double v = theta_eval(f, g, L).value;
        return v * v;
    };
    return run_blocks(n_samples, seed, n_workers, 1.0, one_sample);
}

SubgroupComparison subgroup_comparison(const TestFunction& f, const LatticeSpec& L_sub,
                                       long long n_samples, std::uint64_t seed, int n_workers) {
    if (L_sub.kind != LatticeKind::CongruenceSub)
        throw ValidationError("subgroup_comparison: lattice is not a congruence subgroup");
    if (!f.positive) throw ValidationError("subgroup_comparison: requires positive f");
    LatticeSpec full = LatticeSpec::modular();
    SubgroupComparison out;
    out.lhs = direct_theta_norm(f, L_sub, n_samples, seed, n_workers);
    out.rhs_norm = direct_theta_norm(f, full, n_samples, seed + 1, n_workers);
    double factor = double(L_sub.cusp_index) * double(L_sub.cusp_index) / double(L_sub.index_in_full);
    out.rhs_bound = factor * out.rhs_norm.mean;
    double se = std::sqrt(out.lhs.std_error * out.lhs.std_error +
                          factor * factor * out.rhs_norm.std_error * out.rhs_norm.std_error);
    out.pass = out.lhs.mean <= out.rhs_bound + 3.0 * se;
    return out;
}

} // namespace cuspflow
