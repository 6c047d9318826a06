// cuspflow command line: lattice experiments and spectral diagnostics with
// deterministic seeding and CSV/JSON emission.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cuspflow/csv.hpp"
#include "cuspflow/dynamics.hpp"
#include "cuspflow/operators.hpp"
#include "cuspflow/parallel.hpp"
#include "cuspflow/scattering.hpp"
#include "cuspflow/spectral.hpp"
#include "cuspflow/theta.hpp"
#include "cuspflow/weights.hpp"

using nlohmann::json;
using namespace cuspflow;

namespace {

constexpr const char* kVersion = "cuspflow 1.0.0";

struct RunConfig {
    std::string command;
    std::string lattice = "sl2z";
    int level = 2;
    std::string method = "both";
    double lambda = 4.0;
    double eps = 0.2;
    double horizon = 1e5;
    long long lmax = 100000;
    long long samples = 100000;
    int orbits = 100;
    int k = 8;
    int sign = -1;
    int p_factor = 2;
    long long tail_threshold = 10000;
    double s_real = 0.75;
    int m_max = 64;
    std::string kind = "real";
    std::string mode = "line";
    double grid_lo = 0.1, grid_hi = 20.0, grid_step = 0.1;
    std::optional<std::uint64_t> seed;
    int workers = default_workers();
    std::string out = "cuspflow_out";

    json echo() const {
        json j;
        j["command"] = command;
        j["lattice"] = lattice;
        j["level"] = level;
        j["method"] = method;
        j["lambda"] = lambda;
        j["eps"] = eps;
        j["horizon"] = horizon;
        j["lmax"] = lmax;
        j["samples"] = samples;
        j["orbits"] = orbits;
        j["k"] = k;
        j["sign"] = sign;
        j["p_factor"] = p_factor;
        j["tail_threshold"] = tail_threshold;
        j["s"] = s_real;
        j["m_max"] = m_max;
        j["kind"] = kind;
        j["mode"] = mode;
        j["grid"] = {grid_lo, grid_hi, grid_step};
        j["seed"] = seed ? json(*seed) : json(nullptr);
        j["workers"] = workers;
        j["out"] = out;
        j["version"] = kVersion;
        return j;
    }
};

LatticeSpec lattice_from(const RunConfig& cfg) {
    if (cfg.lattice == "sl2z") return LatticeSpec::modular();
    if (cfg.lattice == "sl2zi") return LatticeSpec::bianchi();
    if (cfg.lattice == "gamma0") return LatticeSpec::gamma0(cfg.level);
    throw ValidationError("lattice must be one of sl2z, sl2zi, gamma0");
}

TestFunction function_from(const RunConfig& cfg, const LatticeSpec& L) {
    if (!(cfg.eps > 0.0 && cfg.eps < 1.0))
        throw ValidationError("TargetSchedule/test-function invariant: eps must lie in (0,1)");
    if (cfg.lambda < 1.0) throw ValidationError("lambda must be >= 1");
    return L.factor == FactorKind::Real ? real_test_function(cfg.lambda, cfg.eps)
                                        : complex_test_function(cfg.lambda, cfg.eps);
}

void write_metadata(const RunConfig& cfg, const json& results) {
    json j;
    j["config"] = cfg.echo();
    j["results"] = results;
    std::ofstream out(cfg.out + ".json", std::ios::binary);
    out << j.dump(1) << "\n";
}

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int run_loglaw(const RunConfig& cfg) {
    LatticeSpec L = lattice_from(cfg);
    FlowDirection flow = FlowDirection::standard(1);
    long long horizon = (long long)cfg.horizon;
    auto stats = orbit_ensemble(L, flow, horizon, cfg.orbits, *cfg.seed, cfg.workers);
    CsvWriter csv(cfg.out + ".csv");
    csv.row({"seed", "T", "statistic", "value", "se"});
    std::vector<double> runmax, horiz;
    for (const auto& st : stats) {
        csv.row({std::to_string(st.orbit_seed), fmt_g(double(horizon)), "running_max_ratio",
                 fmt_g(st.running_max_ratio), ""});
        csv.row({std::to_string(st.orbit_seed), fmt_g(double(horizon)), "ratio_at_horizon",
                 fmt_g(st.ratio_at_horizon), ""});
        csv.row({std::to_string(st.orbit_seed), fmt_g(double(horizon)), "max_delta",
                 fmt_g(st.max_delta), ""});
        runmax.push_back(st.running_max_ratio);
        horiz.push_back(st.ratio_at_horizon);
    }
    double med_run = median_of(runmax), med_hor = median_of(horiz);
    csv.row({"summary", fmt_g(double(horizon)), "median_running_max_ratio", fmt_g(med_run), ""});
    csv.row({"summary", fmt_g(double(horizon)), "median_ratio_at_horizon", fmt_g(med_hor), ""});
    json res;
    res["median_running_max_ratio"] = med_run;
    res["median_ratio_at_horizon"] = med_hor;
    write_metadata(cfg, res);
    std::cout << "loglaw: median ratio_at_horizon = " << med_hor
              << ", median running_max_ratio = " << med_run << "\n";
    return 0;
}

int run_shrink(const RunConfig& cfg) {
    LatticeSpec L = lattice_from(cfg);
    TargetSchedule sched(cfg.eps, cfg.sign, cfg.p_factor);
    FlowDirection flow = FlowDirection::standard(1);
    std::vector<long long> checkpoints;
    for (long long c = 10000; c <= cfg.lmax; c *= 10) checkpoints.push_back(c);
    if (checkpoints.empty() || checkpoints.back() != cfg.lmax) checkpoints.push_back(cfg.lmax);
    auto stats = shrink_ensemble(L, flow, sched, checkpoints, cfg.tail_threshold, cfg.orbits,
                                 *cfg.seed, cfg.workers);
    CsvWriter csv(cfg.out + ".csv");
    csv.row({"seed", "L_max", "statistic", "value", "se"});
    std::vector<std::vector<double>> counts(checkpoints.size());
    std::vector<double> beyond;
    for (const auto& st : stats) {
        for (std::size_t i = 0; i < checkpoints.size(); ++i) {
            csv.row({std::to_string(st.orbit_seed), std::to_string(checkpoints[i]), "hits",
                     std::to_string(st.checkpoint_counts[i]), ""});
            counts[i].push_back(double(st.checkpoint_counts[i]));
        }
        csv.row({std::to_string(st.orbit_seed), std::to_string(cfg.lmax), "hits_beyond_tail",
                 std::to_string(st.hits_beyond), ""});
        beyond.push_back(double(st.hits_beyond));
    }
    json res;
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        double med = median_of(counts[i]);
        csv.row({"summary", std::to_string(checkpoints[i]), "median_hits", fmt_g(med), ""});
        res["median_hits"][std::to_string(checkpoints[i])] = med;
    }
    res["median_hits_beyond_tail"] = median_of(beyond);
    write_metadata(cfg, res);
    std::cout << "shrink: median hits at L_max = " << median_of(counts.back()) << "\n";
    return 0;
}

int run_theta_norm(const RunConfig& cfg) {
    LatticeSpec L = lattice_from(cfg);
    TestFunction f = function_from(cfg, L);
    json res;
    CsvWriter csv(cfg.out + ".csv");
    csv.row({"method", "term", "value", "se"});
    double direct = 0, spectral = 0, dse = 0;
    if (cfg.method == "direct" || cfg.method == "both") {
        McEstimate est = direct_theta_norm(f, L, cfg.samples, *cfg.seed, cfg.workers);
        res["direct"] = json::parse(est.to_json());
        csv.row({"direct", "norm", fmt_g(est.mean), fmt_g(est.std_error)});
        direct = est.mean;
        dse = est.std_error;
    }
    if (cfg.method == "spectral" || cfg.method == "both") {
        ScatteringEvaluator S(L);
        SpectralNormReport rep = spectral_theta_norm(f, S, L);
        res["spectral"] = json::parse(rep.to_json());
        csv.row({"spectral", "l2_term", fmt_g(rep.l2_term), ""});
        csv.row({"spectral", "cross_term", fmt_g(rep.cross_term), ""});
        for (const auto& p : rep.pole_terms)
            csv.row({"spectral", "pole_s=" + fmt_g(p.s, 6), fmt_g(p.contribution), ""});
        csv.row({"spectral", "total", fmt_g(rep.total), ""});
        spectral = rep.total;
    }
    if (cfg.method == "both") {
        double rel = std::abs(direct - spectral) / spectral;
        res["rel_diff"] = rel;
        res["direct_se"] = dse;
        csv.row({"both", "rel_diff", fmt_g(rel), ""});
        std::cout << "theta-norm: direct = " << direct << " +- " << dse
                  << ", spectral = " << spectral << ", |diff|/spectral = " << rel << "\n";
    }
    write_metadata(cfg, res);
    return 0;
}

int run_siegel(const RunConfig& cfg) {
    LatticeSpec L = lattice_from(cfg);
    TestFunction f = function_from(cfg, L);
    McEstimate est = siegel_mean(f, L, cfg.samples, *cfg.seed, cfg.workers);
    double expected = L.c0() * f.norm_l1();
    double z = est.std_error > 0 ? (est.mean - expected) / est.std_error : 0.0;
    CsvWriter csv(cfg.out + ".csv");
    csv.row({"statistic", "value", "se"});
    csv.row({"mc_mean", fmt_g(est.mean), fmt_g(est.std_error)});
    csv.row({"c0_l1", fmt_g(expected), ""});
    csv.row({"z_score", fmt_g(z), ""});
    json res;
    res["mc"] = json::parse(est.to_json());
    res["c0_l1"] = expected;
    res["z_score"] = z;
    write_metadata(cfg, res);
    std::cout << "siegel: mean = " << est.mean << " +- " << est.std_error
              << ", c0 ||f||_1 = " << expected << ", z = " << z << "\n";
    return 0;
}

int run_dk(const RunConfig& cfg, bool ydk) {
    DkSpec spec;
    spec.k = cfg.k;
    spec.schedule = TargetSchedule(cfg.eps, cfg.sign, cfg.p_factor);
    spec.lattice = lattice_from(cfg);
    McEstimate est = ydk ? measure_ydk(spec, cfg.samples, *cfg.seed, cfg.workers)
                         : measure_dk(spec, cfg.samples, *cfg.seed, cfg.workers);
    CsvWriter csv(cfg.out + ".csv");
    csv.row({"k", "statistic", "value", "se"});
    csv.row({std::to_string(cfg.k), ydk ? "ydk_measure" : "dk_measure", fmt_g(est.mean),
             fmt_g(est.std_error)});
    json res;
    res[ydk ? "ydk" : "dk"] = json::parse(est.to_json());
    write_metadata(cfg, res);
    std::cout << (ydk ? "ydk" : "dk") << "-measure: " << est.mean << " +- " << est.std_error
              << "\n";
    return 0;
}

int run_scattering_scan(const RunConfig& cfg) {
    LatticeSpec L = lattice_from(cfg);
    CsvWriter csv(cfg.out + ".csv");
    csv.row({"s_re", "s_im", "C_re", "C_im", "abs_C"});
    double max_abs_dev = 0.0;
    for (double x = cfg.grid_lo; x <= cfg.grid_hi + 1e-12; x += cfg.grid_step) {
        cplx s = cfg.mode == "line" ? cplx(0.5, x) : cplx(x, 0.0);
        cplx c = scattering_c(s, L);
        csv.row({fmt_g(s.real()), fmt_g(s.imag()), fmt_g(c.real()), fmt_g(c.imag()),
                 fmt_g(std::abs(c))});
        if (cfg.mode == "line") max_abs_dev = std::max(max_abs_dev, std::abs(std::abs(c) - 1.0));
    }
    json res;
    res["residue_at_1"] = scattering_residue_at_one(L);
    res["c0"] = L.c0();
    if (cfg.mode == "line") res["max_unitarity_deviation"] = max_abs_dev;
    write_metadata(cfg, res);
    std::cout << "scattering-scan: residue at 1 = " << res["residue_at_1"].get<double>()
              << " (c0 = " << L.c0() << ")\n";
    return 0;
}

int run_pm_table(const RunConfig& cfg) {
    FactorKind kind = cfg.kind == "real" ? FactorKind::Real : FactorKind::Complex;
    double expo = kind == FactorKind::Real ? 2.0 * cfg.s_real - 1.0 : 4.0 * cfg.s_real - 2.0;
    CsvWriter csv(cfg.out + ".csv");
    csv.row({"m", "P_m", "P_m_scaled"});
    cplx p = 1.0;
    for (int m = 0; m <= cfg.m_max; ++m) {
        if (m > 0) p = pm_step(p, m - 1, cplx(cfg.s_real), kind);
        csv.row({std::to_string(m), fmt_g(p.real()),
                 fmt_g(p.real() * std::pow(m + 1.0, expo))});
    }
    auto band = pm_asymptotic_check(cfg.s_real, std::max(10, cfg.m_max), kind);
    json res;
    res["band_low"] = band.first;
    res["band_high"] = band.second;
    write_metadata(cfg, res);
    std::cout << "pm-table: scaled band [" << band.first << ", " << band.second << "]\n";
    return 0;
}

int run_identity_check(const RunConfig& cfg) {
    OperatorIdentityReport rep = operator_identity_check(*cfg.seed);
    CsvWriter csv(cfg.out + ".csv");
    csv.row({"check", "value"});
    csv.row({"real_max_residual", fmt_g(rep.real_max_residual)});
    csv.row({"complex_ratio_deviation", fmt_g(rep.complex_ratio_deviation)});
    csv.row({"casimir_deviation", fmt_g(rep.casimir_deviation)});
    csv.row({"casimir_eigenvalue_re", fmt_g(rep.casimir_eigenvalue.real())});
    csv.row({"casimir_sign", std::to_string(rep.casimir_sign)});
    write_metadata(cfg, json::parse(rep.to_json()));
    std::cout << "identity-check: real residual " << rep.real_max_residual
              << ", complex ratio deviation " << rep.complex_ratio_deviation
              << ", casimir sign " << rep.casimir_sign << "\n";
    if (rep.real_max_residual > 1e-6 || rep.complex_ratio_deviation > 1e-5)
        throw NumericalError("identity-check: residual beyond guard");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cuspflow: cusp-excursion and theta-norm experiments"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    std::uint64_t seed_opt = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file (flags override fields)");
        sub->add_option("--seed", seed_opt, "master seed (or env CUSPFLOW_SEED)");
        sub->add_option("--workers", cfg.workers, "worker threads");
        sub->add_option("--out", cfg.out, "output path prefix");
        sub->add_option("--lattice", cfg.lattice, "sl2z | sl2zi | gamma0");
        sub->add_option("--level", cfg.level, "level N for gamma0");
    };

    CLI::App* c_loglaw = app.add_subcommand("loglaw", "unipotent log-law orbit ensemble");
    add_common(c_loglaw);
    c_loglaw->add_option("--horizon", cfg.horizon);
    c_loglaw->add_option("--orbits", cfg.orbits);

    CLI::App* c_shrink = app.add_subcommand("shrink", "shrinking-target hit counts");
    add_common(c_shrink);
    c_shrink->add_option("--eps", cfg.eps);
    c_shrink->add_option("--sign", cfg.sign);
    c_shrink->add_option("--lmax", cfg.lmax);
    c_shrink->add_option("--orbits", cfg.orbits);
    c_shrink->add_option("--tail-threshold", cfg.tail_threshold);

    CLI::App* c_theta = app.add_subcommand("theta-norm", "direct vs spectral theta norm");
    add_common(c_theta);
    c_theta->add_option("--method", cfg.method, "direct | spectral | both");
    c_theta->add_option("--lambda", cfg.lambda);
    c_theta->add_option("--eps", cfg.eps);
    c_theta->add_option("--samples", cfg.samples);

    CLI::App* c_siegel = app.add_subcommand("siegel", "integral-formula Monte Carlo check");
    add_common(c_siegel);
    c_siegel->add_option("--lambda", cfg.lambda);
    c_siegel->add_option("--eps", cfg.eps);
    c_siegel->add_option("--samples", cfg.samples);

    CLI::App* c_dk = app.add_subcommand("dk-measure", "measure of the translated-cusp union D_k");
    add_common(c_dk);
    c_dk->add_option("--k", cfg.k);
    c_dk->add_option("--eps", cfg.eps);
    c_dk->add_option("--sign", cfg.sign);
    c_dk->add_option("--pfactor", cfg.p_factor);
    c_dk->add_option("--samples", cfg.samples);

    CLI::App* c_ydk = app.add_subcommand("ydk-measure", "measure of the pullback Y_{D_k}");
    add_common(c_ydk);
    c_ydk->add_option("--k", cfg.k);
    c_ydk->add_option("--eps", cfg.eps);
    c_ydk->add_option("--sign", cfg.sign);
    c_ydk->add_option("--pfactor", cfg.p_factor);
    c_ydk->add_option("--samples", cfg.samples);

    CLI::App* c_scat = app.add_subcommand("scattering-scan", "scattering constant scan");
    add_common(c_scat);
    c_scat->add_option("--mode", cfg.mode, "line (s = 1/2 + ir) | interval (real s)");
    c_scat->add_option("--lo", cfg.grid_lo);
    c_scat->add_option("--hi", cfg.grid_hi);
    c_scat->add_option("--step", cfg.grid_step);

    CLI::App* c_pm = app.add_subcommand("pm-table", "weight-ratio table");
    add_common(c_pm);
    c_pm->add_option("--s", cfg.s_real);
    c_pm->add_option("--mmax", cfg.m_max);
    c_pm->add_option("--case", cfg.kind, "real | complex");

    CLI::App* c_id = app.add_subcommand("identity-check", "ladder/Casimir residuals");
    add_common(c_id);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        cfg.command = sub->get_name();

        // precedence: flags > config file > defaults
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ValidationError("cannot open config file " + config_path);
            json j = json::parse(in);
            auto load = [&](const char* key, auto& field) {
                if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
            };
            auto overridden = [&](const std::string& name) {
                return sub->count("--" + name) > 0;
            };
            if (!overridden("lattice")) load("lattice", cfg.lattice);
            if (!overridden("level")) load("level", cfg.level);
            if (!overridden("method")) load("method", cfg.method);
            if (!overridden("lambda")) load("lambda", cfg.lambda);
            if (!overridden("eps")) load("eps", cfg.eps);
            if (!overridden("horizon")) load("horizon", cfg.horizon);
            if (!overridden("lmax")) load("lmax", cfg.lmax);
            if (!overridden("samples")) load("samples", cfg.samples);
            if (!overridden("orbits")) load("orbits", cfg.orbits);
            if (!overridden("k")) load("k", cfg.k);
            if (!overridden("sign")) load("sign", cfg.sign);
            if (!overridden("pfactor")) load("p_factor", cfg.p_factor);
            if (!overridden("workers")) load("workers", cfg.workers);
            if (!overridden("out")) load("out", cfg.out);
            if (!sub->count("--seed") && j.contains("seed") && !j.at("seed").is_null())
                seed_opt = j.at("seed").get<std::uint64_t>(), cfg.seed = seed_opt;
        }
        if (sub->count("--seed")) cfg.seed = seed_opt;
        if (!cfg.seed) {
            if (const char* env = std::getenv("CUSPFLOW_SEED")) cfg.seed = std::strtoull(env, nullptr, 10);
        }
        if (!cfg.seed && (cfg.command == "loglaw" || cfg.command == "shrink" ||
                          cfg.command == "theta-norm" || cfg.command == "siegel" ||
                          cfg.command == "dk-measure" || cfg.command == "ydk-measure" ||
                          cfg.command == "identity-check"))
            throw ValidationError("RunConfig invariant: master_seed is mandatory "
                                  "(--seed, config, or CUSPFLOW_SEED)");
        if (!cfg.seed) cfg.seed = 0; // deterministic scans take no randomness
        if (cfg.workers < 1) throw ValidationError("workers must be >= 1");

        if (cfg.command == "loglaw") return run_loglaw(cfg);
        if (cfg.command == "shrink") return run_shrink(cfg);
        if (cfg.command == "theta-norm") return run_theta_norm(cfg);
        if (cfg.command == "siegel") return run_siegel(cfg);
        if (cfg.command == "dk-measure") return run_dk(cfg, false);
        if (cfg.command == "ydk-measure") return run_dk(cfg, true);
        if (cfg.command == "scattering-scan") return run_scattering_scan(cfg);
        if (cfg.command == "pm-table") return run_pm_table(cfg);
        if (cfg.command == "identity-check") return run_identity_check(cfg);
        throw ValidationError("unknown command");
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical guard: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
