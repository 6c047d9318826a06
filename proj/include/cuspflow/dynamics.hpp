#pragma once

#include <cstdint>
#include <vector>

#include "cuspflow/lattice.hpp"
#include "cuspflow/theta.hpp"

namespace cuspflow {

// shrinking-target radius schedule r_l = (1 + sign * eps) log l with the
// window rule p(k) = p_factor * k
struct TargetSchedule {
    double eps = 0.2;
    int sign = -1;
    int p_factor = 2;
    bool infinite = false; // degenerate r = +inf schedule

    TargetSchedule() = default;
    TargetSchedule(double eps_, int sign_, int p_factor_ = 2);

    double r(long long l) const;
    long long p(long long k) const { return p_factor * k; }

    static TargetSchedule degenerate();
};

struct ExcursionRecord {
    std::vector<double> times;
    std::vector<double> deltas;
    std::vector<double> runmax_series; // running max of delta/log s, s >= 3
    double running_max_ratio = 0.0;    // max_{3 <= s <= T} delta(s)/log s
    double max_delta = 0.0;
    double ratio_at_horizon = 0.0;     // max_{s <= T} delta(s) / log T
    long long horizon = 0;
};

// samples delta(x0 u_s) at s = stride, 2 stride, ...; record_stride thins the
// stored series (summary statistics always use every sample)
ExcursionRecord simulate_orbit(const GroupPoint& x0, const LatticeSpec& L,
                               const FlowDirection& flow, long long horizon, long long stride = 1,
                               long long record_stride = 0);

// {l <= L_max : delta(x0 u_l) >= r_l}
std::vector<long long> shrinking_target_count(const GroupPoint& x0, const LatticeSpec& L,
                                              const FlowDirection& flow,
                                              const TargetSchedule& schedule, long long L_max);

struct DkSpec {
    int k = 8;
    TargetSchedule schedule;
    LatticeSpec lattice;
    FlowDirection flow = FlowDirection::standard(1);
};

// membership of the Q\G point (a_{eta t}, k) in D_k: exists l in [k, p(k)]
// with t_n(a_{eta t} k u_l) >= r_l
bool dk_membership(double t, const CompactParam& k, const DkSpec& spec,
                   long long* witness = nullptr);

// Monte Carlo measure of D_k under e^{-t} dt dk; the proposal draws t from a
// shifted exponential starting at the exact minimum threshold over the window
McEstimate measure_dk(const DkSpec& spec, long long n_samples, std::uint64_t seed,
                      int n_workers = 1);

// sigma(Y_{D_k}) through the height formulation: Haar average of the event
// exists l in [k, p(k)] with delta(x u_l) >= r_l
McEstimate measure_ydk(const DkSpec& spec, long long n_samples, std::uint64_t seed,
                       int n_workers = 1);

// grid-measured constant c with Q A^1(tau - c) B^- inside Q A^1(tau) K:
// the maximal t_n-drop of right multiplication by n^-_x over |x| <= 1
double affine_inclusion_constant(const LatticeSpec& L, int grid = 512);

// ensemble summaries for the log-law and Borel-Cantelli experiments
struct OrbitStat {
    std::uint64_t orbit_seed = 0;
    double running_max_ratio = 0.0;
    double ratio_at_horizon = 0.0;
    double max_delta = 0.0;
};

std::vector<OrbitStat> orbit_ensemble(const LatticeSpec& L, const FlowDirection& flow,
                                      long long horizon, int n_orbits, std::uint64_t seed,
                                      int n_workers = 1);

struct ShrinkStat {
    std::uint64_t orbit_seed = 0;
    std::vector<long long> checkpoint_counts; // hits up to each checkpoint
    long long hits_beyond = 0;                // hits with l > tail_threshold
};

std::vector<ShrinkStat> shrink_ensemble(const LatticeSpec& L, const FlowDirection& flow,
                                        const TargetSchedule& schedule,
                                        const std::vector<long long>& checkpoints,
                                        long long tail_threshold, int n_orbits,
                                        std::uint64_t seed, int n_workers = 1);

} // namespace cuspflow
