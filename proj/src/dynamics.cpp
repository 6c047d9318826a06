#include "cuspflow/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cuspflow/parallel.hpp"

namespace cuspflow {

namespace {

// delta(x0 u_s) from the entries of x0, using the closed form of u_s
struct OrbitEval {
    bool real = true;
    cplx a, b, c, d;
    double y = 1.0; // flow coefficient of the single factor

    explicit OrbitEval(const GroupPoint& x0, const LatticeSpec& L, const FlowDirection& flow) {
        const Mat2& m = x0.factors.at(0).m;
        a = m.a;
        b = m.b;
        c = m.c;
        d = m.d;
        real = L.factor == FactorKind::Real;
        y = flow.y.at(0);
    }

    double delta_at(double s) const {
        double sy = s * y;
        if (real) {
            double A = a.real() + b.real() * sy;
            double C = c.real() + d.real() * sy;
            double den = C * C + d.real() * d.real();
            double ys = 1.0 / den;
            double xs = (A * C + b.real() * d.real()) * ys;
            return delta_point_modular(xs, ys);
        }
        cplx A = a + b * sy;
        cplx C = c + d * sy;
        double den = std::norm(C) + std::norm(d);
        double hs = 1.0 / den;
        cplx zs = (A * std::conj(C) + b * std::conj(d)) * hs;
        return delta_point_bianchi(zs, hs);
    }
};

} // namespace

TargetSchedule::TargetSchedule(double eps_, int sign_, int p_factor_)
    : eps(eps_), sign(sign_), p_factor(p_factor_) {
    if (!(eps > 0.0 && eps < 1.0))
        throw ValidationError("TargetSchedule: eps must lie in (0,1)");
    if (sign != 1 && sign != -1)
        throw ValidationError("TargetSchedule: sign must be +1 or -1");
    if (p_factor < 2) throw ValidationError("TargetSchedule: p(k) = p_factor k needs p_factor >= 2");
}

double TargetSchedule::r(long long l) const {
    if (infinite) return std::numeric_limits<double>::infinity();
    return (1.0 + sign * eps) * std::log(double(l));
}

TargetSchedule TargetSchedule::degenerate() {
    TargetSchedule s;
    s.infinite = true;
    return s;
}

ExcursionRecord simulate_orbit(const GroupPoint& x0, const LatticeSpec& L,
                               const FlowDirection& flow, long long horizon, long long stride,
                               long long record_stride) {
    if (horizon < 10) throw ValidationError("simulate_orbit: horizon must be >= 10");
    if (stride < 1) throw ValidationError("simulate_orbit: stride must be >= 1");
    if (record_stride <= 0) record_stride = std::max<long long>(1, horizon / (1000 * stride)) * stride;

    OrbitEval ev(x0, L, flow);
    ExcursionRecord rec;
    rec.horizon = horizon;
    double runmax = 0.0;
    for (long long s = stride; s <= horizon; s += stride) {
        double dlt = ev.delta_at(double(s));
        rec.max_delta = std::max(rec.max_delta, dlt);
        if (s >= 3) runmax = std::max(runmax, dlt / std::log(double(s)));
        if (s % record_stride == 0) {
            rec.times.push_back(double(s));
            rec.deltas.push_back(dlt);
            rec.runmax_series.push_back(runmax);
        }
    }
    rec.running_max_ratio = runmax;
    rec.ratio_at_horizon = rec.max_delta / std::log(double(horizon));
    return rec;
}

std::vector<long long> shrinking_target_count(const GroupPoint& x0, const LatticeSpec& L,
                                              const FlowDirection& flow,
                                              const TargetSchedule& schedule, long long L_max) {
    if (L_max < 10) throw ValidationError("shrinking_target_count: L_max must be >= 10");
    std::vector<long long> hits;
    if (schedule.infinite) return hits;
    OrbitEval ev(x0, L, flow);
    for (long long l = 1; l <= L_max; ++l) {
        if (ev.delta_at(double(l)) >= schedule.r(l)) hits.push_back(l);
    }
    return hits;
}

bool dk_membership(double t, const CompactParam& k, const DkSpec& spec, long long* witness) {
    if (spec.schedule.infinite) return false;
    const int mu = spec.lattice.mu();
    const double y = spec.flow.y.at(0);
    double k21_re, k22_re;
    cplx k21, k22;
    if (spec.lattice.factor == FactorKind::Real) {
        k21_re = -std::sin(k.theta);
        k22_re = std::cos(k.theta);
        k21 = k22 = 0.0;
    } else {
        k21 = -std::sin(k.theta) * std::polar(1.0, -k.beta);
        k22 = std::cos(k.theta) * std::polar(1.0, -k.alpha);
        k21_re = k22_re = 0.0;
    }
    for (long long l = spec.k; l <= spec.schedule.p(spec.k); ++l) {
        double q;
        if (spec.lattice.factor == FactorKind::Real) {
            double e = k21_re + k22_re * double(l) * y;
            q = e * e + k22_re * k22_re;
        } else {
            cplx e = k21 + k22 * (double(l) * y);
            q = std::norm(e) + std::norm(k22);
        }
        if (t - mu * std::log(q) >= spec.schedule.r(l)) {
            if (witness) *witness = l;
            return true;
        }
    }
    return false;
}

namespace {

// exact minimum of t over D_k: q(l, k) >= sigma_min^2([[1,0],[l y,1]])
double dk_threshold_floor(const DkSpec& spec) {
    double t_lo = std::numeric_limits<double>::infinity();
    const int mu = spec.lattice.mu();
    for (long long l = spec.k; l <= spec.schedule.p(spec.k); ++l) {
        double L = double(l) * spec.flow.y.at(0);
        double tr = 2.0 + L * L;
        double lam_min = 0.5 * (tr - L * std::sqrt(L * L + 4.0));
        t_lo = std::min(t_lo, spec.schedule.r(l) + mu * std::log(lam_min));
    }
    return t_lo;
}

} // namespace

McEstimate measure_dk(const DkSpec& spec, long long n_samples, std::uint64_t seed, int n_workers) {
    if (spec.k < 1) throw ValidationError("measure_dk: k must be >= 1");
    if (spec.schedule.infinite) {
        McEstimate z;
        z.n_samples = n_samples;
        z.seed = seed;
        return z;
    }
    const double t_lo = dk_threshold_floor(spec);
    const double scale = std::exp(-t_lo); // mass of e^{-t} dt on [t_lo, inf)
    const bool real = spec.lattice.factor == FactorKind::Real;

    long long hits_guard = 0;
    auto one_sample = [&, t_lo, real](RngStream& rng) {
        double t = t_lo + rng.exponential();
        CompactParam k;
        if (real) {
            k.theta = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
        } else {
            k.theta = std::asin(std::sqrt(rng.uniform01()));
            k.alpha = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
            k.beta = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
        }
        return dk_membership(t, k, spec) ? 1.0 : 0.0;
    };
    McEstimate est = [&] {
        // reuse the block machinery from theta via a local copy
        struct Acc {
            double sum = 0, sumsq = 0;
        };
        const long long kBlock = 4096;
        long long n_blocks = (n_samples + kBlock - 1) / kBlock;
        Acc total = parallel_blocks<Acc>(
            std::size_t(n_blocks), n_workers,
            [&](std::size_t blk) {
                RngStream rng(seed, blk);
                long long lo = (long long)blk * kBlock;
                long long hi = std::min(n_samples, lo + kBlock);
                Acc acc;
                for (long long i = lo; i < hi; ++i) {
                    double x = one_sample(rng);
                    acc.sum += x;
                    acc.sumsq += x * x;
                }
                return acc;
            },
            Acc{},
            [](Acc a, const Acc& b) {
                a.sum += b.sum;
                a.sumsq += b.sumsq;
                return a;
            });
        McEstimate e;
        e.n_samples = n_samples;
        e.seed = seed;
        double mean = total.sum / double(n_samples);
        hits_guard = (long long)std::llround(total.sum);
        double var = std::max(0.0, total.sumsq / double(n_samples) - mean * mean);
        e.mean = scale * mean;
        e.std_error = scale * std::sqrt(var / double(n_samples));
        return e;
    }();
    if (n_samples >= 100000 && hits_guard == 0)
        throw ProposalMismatch("measure_dk: proposal produced no hits; widen the window");
    return est;
}

McEstimate measure_ydk(const DkSpec& spec, long long n_samples, std::uint64_t seed,
                       int n_workers) {
    const LatticeSpec& L = spec.lattice;
    struct Acc {
        double sum = 0;
    };
    const long long kBlock = 1024;
    long long n_blocks = (n_samples + kBlock - 1) / kBlock;
    Acc total = parallel_blocks<Acc>(
        std::size_t(n_blocks), n_workers,
        [&](std::size_t blk) {
            RngStream rng(seed, blk);
            long long lo = (long long)blk * kBlock;
            long long hi = std::min(n_samples, lo + kBlock);
            Acc acc;
            for (long long i = lo; i < hi; ++i) {
                GroupPoint g = haar_sample(L, rng);
                OrbitEval ev(g, L, spec.flow);
                bool member = false;
                for (long long l = spec.k; l <= spec.schedule.p(spec.k); ++l) {
                    if (ev.delta_at(double(l)) >= spec.schedule.r(l)) {
                        member = true;
                        break;
                    }
                }
                if (member) acc.sum += 1.0;
            }
            return acc;
        },
        Acc{}, [](Acc a, const Acc& b) {
            a.sum += b.sum;
            return a;
        });
    McEstimate e;
    e.n_samples = n_samples;
    e.seed = seed;
    double mean = total.sum / double(n_samples);
    e.mean = mean;
    e.std_error = std::sqrt(std::max(0.0, mean * (1.0 - mean)) / double(n_samples));
    return e;
}

double affine_inclusion_constant(const LatticeSpec& L, int grid) {
    const int mu = L.mu();
    double worst = 0.0;
    if (L.factor == FactorKind::Real) {
        for (int i = 0; i <= grid; ++i) {
            double x = -1.0 + 2.0 * i / grid;
            worst = std::max(worst, mu * std::log1p(x * x));
        }
    } else {
        for (int i = 0; i <= grid; ++i) {
            for (int j = 0; j <= grid; ++j) {
                double xr = -1.0 + 2.0 * i / grid, xi = -1.0 + 2.0 * j / grid;
                if (xr * xr + xi * xi > 1.0) continue;
                worst = std::max(worst, mu * std::log1p(xr * xr + xi * xi));
            }
        }
    }
    return worst;
}

std::vector<OrbitStat> orbit_ensemble(const LatticeSpec& L, const FlowDirection& flow,
                                      long long horizon, int n_orbits, std::uint64_t seed,
                                      int n_workers) {
    return parallel_blocks<std::vector<OrbitStat>>(
        std::size_t(n_orbits), n_workers,
        [&](std::size_t idx) {
            RngStream rng(seed, idx);
            GroupPoint x0 = haar_sample(L, rng);
            OrbitEval ev(x0, L, flow);
            OrbitStat st;
            st.orbit_seed = seed ^ idx;
            double runmax = 0.0, dmax = 0.0;
            for (long long s = 1; s <= horizon; ++s) {
                double dlt = ev.delta_at(double(s));
                dmax = std::max(dmax, dlt);
                if (s >= 3) runmax = std::max(runmax, dlt / std::log(double(s)));
            }
            st.running_max_ratio = runmax;
            st.max_delta = dmax;
            st.ratio_at_horizon = dmax / std::log(double(horizon));
            return std::vector<OrbitStat>{st};
        },
        std::vector<OrbitStat>{},
        [](std::vector<OrbitStat> a, const std::vector<OrbitStat>& b) {
            a.insert(a.end(), b.begin(), b.end());
            return a;
        });
}

std::vector<ShrinkStat> shrink_ensemble(const LatticeSpec& L, const FlowDirection& flow,
                                        const TargetSchedule& schedule,
                                        const std::vector<long long>& checkpoints,
                                        long long tail_threshold, int n_orbits,
                                        std::uint64_t seed, int n_workers) {
    long long L_max = checkpoints.empty() ? 0 : checkpoints.back();
    return parallel_blocks<std::vector<ShrinkStat>>(
        std::size_t(n_orbits), n_workers,
        [&](std::size_t idx) {
            RngStream rng(seed, idx);
            GroupPoint x0 = haar_sample(L, rng);
            OrbitEval ev(x0, L, flow);
            ShrinkStat st;
            st.orbit_seed = seed ^ idx;
            st.checkpoint_counts.assign(checkpoints.size(), 0);
            long long count = 0;
            std::size_t ck = 0;
            for (long long l = 1; l <= L_max; ++l) {
                if (ev.delta_at(double(l)) >= schedule.r(l)) {
                    ++count;
                    if (l > tail_threshold) ++st.hits_beyond;
                }
                while (ck < checkpoints.size() && l == checkpoints[ck]) {
                    st.checkpoint_counts[ck] = count;
                    ++ck;
                }
            }
            return std::vector<ShrinkStat>{st};
        },
        std::vector<ShrinkStat>{},
        [](std::vector<ShrinkStat> a, const std::vector<ShrinkStat>& b) {
            a.insert(a.end(), b.begin(), b.end());
            return a;
        });
}

} // namespace cuspflow
