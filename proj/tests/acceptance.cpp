// SPDX-License-Identifier: Apache-2.0
//
// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "ircw/experiments.hpp"
#include "ircw/robust_solver.hpp"
#include "ircw/spectrum_validator.hpp"
#include "ircw/waterfilling.hpp"
#include "oracles.hpp"

using namespace ircw;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

double log_uniform(std::mt19937_64& gen, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(gen));
}

std::vector<double> random_cnr(std::mt19937_64& gen, std::size_t n, double lo, double hi) {
    std::vector<double> c(n);
    for (double& x : c) x = log_uniform(gen, lo, hi);
    return c;
}

/// Joint coefficients as the scenario pipeline would build them for the
/// reference grid with normalizers taken from the CNRs themselves.
JointCoefficients coefficients_for(const CnrProfile& cnr, double w_c) {
    const OfdmParams params = OfdmParams::reference_grid();
    const double f_r = params.subcarrier_spacing * params.pulse_duration() / 2.0 *
                       waterfill(cnr.radar_cnr).optimal_value / kLn2;
    const double f_c = params.subcarrier_spacing * waterfill(cnr.comm_cnr).optimal_value / kLn2;
    return ObjectiveConfig(params, 1.0 - w_c, w_c, f_r, f_c).coefficients();
}

Scenario baseline_scenario(double snr_db, double w_c) {
    Scenario sc;
    sc.noise.snr_db = snr_db;
    sc.w_c = w_c;
    return sc;
}

std::filesystem::path scenario_dir() { return std::filesystem::path(IRCW_SCENARIO_DIR); }

Outcome criterion_1() {
    const auto start = Clock::now();
    std::mt19937_64 gen(101);
    Outcome out;
    double worst_gap = 0.0;
    double worst_kkt = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
        const std::vector<double> cnr = random_cnr(gen, n, 0.05, 50.0);
        const WaterfillResult wf = waterfill(cnr, 1.0);
        std::vector<std::function<double(double)>> f;
        for (double c : cnr) f.push_back([c](double p) { return std::log1p(p * c); });
        const oracle::GridOptimum grid = oracle::simplex_grid_max(f, 1.0, 1000);
        worst_gap = std::max(worst_gap, grid.value - wf.optimal_value);
        worst_kkt = std::max(worst_kkt, waterfill_kkt_residual(cnr, wf));
    }
    const double elapsed = seconds_since(start);
    out.passed = worst_gap <= 1e-9 && worst_kkt <= 1e-9 && elapsed < 10.0;
    out.detail = fmt("max(grid - waterfill) = %.3g, max KKT residual = %.3g, %.2f s", worst_gap,
                     worst_kkt, elapsed);
    return out;
}

Outcome criterion_2() {
    const auto start = Clock::now();
    std::mt19937_64 gen(202);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst_p = 0.0;
    double worst_value = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        CnrProfile cnr{random_cnr(gen, 3, 0.1, 10.0), random_cnr(gen, 3, 0.1, 10.0)};
        const JointCoefficients k = coefficients_for(cnr, unit(gen));
        const RobustSolution robust = solve_robust(cnr, k, 1.0);

        std::vector<std::function<double(double)>> f;
        for (std::size_t m = 0; m < 3; ++m) {
            const double nu = cnr.radar_cnr[m];
            const double w = cnr.comm_cnr[m];
            f.push_back([=](double p) { return k.alpha * std::log1p(p * nu) + k.beta * std::log1p(p * w); });
        }
        const oracle::GridOptimum grid = oracle::simplex_grid_max(f, 1.0, 10000);
        for (std::size_t m = 0; m < 3; ++m)
            worst_p = std::max(worst_p, std::abs(robust.allocation.powers[m] - grid.point[m]));
        worst_value = std::max(worst_value, std::abs(robust.worst_case_value - grid.value));
    }
    const double elapsed = seconds_since(start);
    return {worst_p <= 2e-3 && worst_value <= 1e-6 && elapsed < 60.0,
            fmt("max |p - p_grid| = %.3g, max |I - I_grid| = %.3g, %.2f s", worst_p, worst_value, elapsed)};
}

Outcome criterion_3() {
    std::mt19937_64 gen(303);
    std::uniform_int_distribution<std::size_t> size(2, 32);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = size(gen);
        CnrProfile cnr{random_cnr(gen, n, 0.01, 100.0), random_cnr(gen, n, 0.01, 100.0)};
        const double w_c = trial % 2 ? 1.0 : 0.0;
        const RobustSolution robust = solve_robust(cnr, coefficients_for(cnr, w_c), 1.0);
        const WaterfillResult wf = waterfill(w_c == 0.0 ? cnr.radar_cnr : cnr.comm_cnr, 1.0);
        for (std::size_t m = 0; m < n; ++m)
            worst = std::max(worst, std::abs(robust.allocation.powers[m] - wf.allocation.powers[m]));
    }
    return {worst <= 1e-9, fmt("max |p_robust - p_waterfill| = %.3g over 100 instances", worst)};
}

Outcome criterion_4() {
    double worst_kkt = 0.0;
    double worst_budget = 0.0;
    for (double snr : {-10.0, 0.0, 10.0, 20.0}) {
        for (double w_c : {0.1, 0.5, 0.9}) {
            const Scenario sc = baseline_scenario(snr, w_c);
            const NoiseModel noise = sc.noise.build(sc.ofdm);
            const UncertaintyClass cls = sc.bounds.build(sc.ofdm);
            const ObjectiveConfig cfg = make_objective_config(sc.ofdm, noise, cls, w_c, 1.0);
            const RobustSolution s = solve_robust(sc.ofdm, noise, cls, cfg, 1.0);
            const CnrProfile lower = cnr_from_response(sc.ofdm, noise, cls.lower());
            worst_kkt = std::max(worst_kkt, kkt_residual(s, invert(lower), cfg.coefficients(), 1.0));
            worst_budget = std::max(worst_budget, std::abs(s.allocation.total() - 1.0));
        }
    }
    return {worst_kkt <= 1e-7 && worst_budget <= 1e-10,
            fmt("max KKT residual = %.3g, max |sum p - 1| = %.3g", worst_kkt, worst_budget)};
}

Outcome criterion_5() {
    const Scenario sc = baseline_scenario(5.0, 0.5);
    const NoiseModel noise = sc.noise.build(sc.ofdm);
    const UncertaintyClass cls = sc.bounds.build(sc.ofdm);
    const ObjectiveConfig cfg = make_objective_config(sc.ofdm, noise, cls, sc.w_c, 1.0);
    const RobustSolution s = solve_robust(sc.ofdm, noise, cls, cfg, 1.0);
    const SaddlePointReport r = verify_saddle_point(sc.ofdm, noise, cls, cfg, s, 200, 7);
    return {r.response_samples == 200 && r.allocation_samples == 200 && r.passed(),
            fmt("response margin %.3g, allocation margin %.3g, violations %g",
                r.response_margin, r.allocation_margin,
                static_cast<double>(r.response_violations + r.allocation_violations))};
}

Outcome criterion_6() {
    const Scenario sc = baseline_scenario(5.0, 0.5);
    const NoiseModel noise = sc.noise.build(sc.ofdm);
    const UncertaintyClass cls = sc.bounds.build(sc.ofdm);
    const ObjectiveConfig cfg = make_objective_config(sc.ofdm, noise, cls, sc.w_c, 1.0);
    const RobustSolution s = solve_robust(sc.ofdm, noise, cls, cfg, 1.0);
    auto value = [&](const ResponsePoint& rho) {
        return joint_criterion(sc.ofdm, s.allocation, cnr_from_response(sc.ofdm, noise, rho), cfg);
    };
    const double at_lower = value(cls.lower());
    const double at_upper = value(cls.upper());
    double margin = 1e300;
    for (const ResponsePoint& rho : sample_responses(cls, 100, 7)) {
        const double v = value(rho);
        margin = std::min({margin, at_upper - v, v - at_lower});
    }
    return {margin >= -1e-9, fmt("min margin %.3g (I_lower %.6g, I_upper %.6g)", margin, at_lower, at_upper)};
}

Outcome criterion_7() {
    std::mt19937_64 gen(707);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::size_t worst_failures = 0;
    double min_margin = 1e300;
    for (int trial = 0; trial < 20; ++trial) {
        // index 0 minimizes both CNR vectors
        const double nu0 = log_uniform(gen, 0.1, 5.0);
        const double w0 = log_uniform(gen, 0.1, 5.0);
        CnrProfile cnr{{nu0, nu0 * log_uniform(gen, 1.0, 20.0)}, {w0, w0 * log_uniform(gen, 1.0, 20.0)}};
        const WorstAllocationReport r = verify_worst_allocation(cnr, coefficients_for(cnr, unit(gen)), 1e-3);
        if (!r.passed()) ++worst_failures;
        min_margin = std::min(min_margin, r.min_margin);
    }

    std::size_t concentration_failures = 0;
    double min_share = 1.0;
    int built = 0;
    while (built < 10) {
        const std::size_t n = 2 + static_cast<std::size_t>(built % 4);
        CnrProfile cnr{random_cnr(gen, n, 0.001, 0.05), random_cnr(gen, n, 0.001, 0.05)};
        const std::size_t m1 = static_cast<std::size_t>(built) % n;
        cnr.radar_cnr[m1] = log_uniform(gen, 2.0, 50.0);
        cnr.comm_cnr[m1] = log_uniform(gen, 2.0, 50.0);
        const JointCoefficients k = coefficients_for(cnr, unit(gen));
        if (!worst_allocation_condition(invert(cnr), k, m1)) continue;
        ++built;
        const RobustSolution s = solve_robust(cnr, k, 1.0);
        const double share = s.allocation.powers[m1];
        min_share = std::min(min_share, share);
        if (share < 1.0 - 1e-9) ++concentration_failures;
    }
    return {worst_failures == 0 && concentration_failures == 0,
            fmt("(a) %g failing instances, min margin %.3g; (b) min share on m1 %.12g",
                static_cast<double>(worst_failures), min_margin, min_share) +
                (concentration_failures ? " (" + std::to_string(concentration_failures) + " below 1 - 1e-9)" : "")};
}

Outcome criterion_8() {
    const Scenario sc = load_scenario(scenario_dir() / "snr_sweep.json");
    const experiments::ExperimentResult result = experiments::run_snr_sweep(sc);
    double dir_margin = 1e300;
    double mi_margin = 1e300;
    std::string failing;
    for (const auto& row : result.rows) {
        const double d = row.dir_robust_lower - row.dir_nonrobust_lower;
        const double m = row.mi_robust_lower - row.mi_nonrobust_lower;
        dir_margin = std::min(dir_margin, d);
        mi_margin = std::min(mi_margin, m);
        if (d < -1e-9) failing += " dir@" + experiments::format_number(row.sweep_value) + "dB";
        if (m < -1e-9) failing += " mi@" + experiments::format_number(row.sweep_value) + "dB";
    }
    const bool ok = result.rows.size() == 7 && result.metadata.specific_response == "class_midpoint" &&
                    dir_margin >= -1e-9 && mi_margin >= -1e-9;
    return {ok, fmt("min robust - nonrobust at lower bounds: DIR %.6g bits/s, MI %.6g bits", dir_margin,
                    mi_margin) +
                    (failing.empty() ? "" : "; below slack:" + failing)};
}

Outcome criterion_9() {
    const Scenario sc = load_scenario(scenario_dir() / "tradeoff.json");
    const experiments::ExperimentResult result = experiments::run_tradeoff(sc);
    using Field = double experiments::ExperimentRow::*;
    struct Column {
        const char* name;
        Field field;
        double sign;  // +1 nondecreasing, -1 nonincreasing
    };
    const Column columns[] = {
        {"dir_robust_lower", &experiments::ExperimentRow::dir_robust_lower, 1.0},
        {"dir_robust_upper", &experiments::ExperimentRow::dir_robust_upper, 1.0},
        {"dir_nonrobust_lower", &experiments::ExperimentRow::dir_nonrobust_lower, 1.0},
        {"dir_nonrobust_upper", &experiments::ExperimentRow::dir_nonrobust_upper, 1.0},
        {"mi_robust_lower", &experiments::ExperimentRow::mi_robust_lower, -1.0},
        {"mi_robust_upper", &experiments::ExperimentRow::mi_robust_upper, -1.0},
        {"mi_nonrobust_lower", &experiments::ExperimentRow::mi_nonrobust_lower, -1.0},
        {"mi_nonrobust_upper", &experiments::ExperimentRow::mi_nonrobust_upper, -1.0},
    };
    std::string failing;
    for (const Column& c : columns) {
        double worst = 0.0;
        for (std::size_t i = 1; i < result.rows.size(); ++i) {
            const double step = c.sign * (result.rows[i].*c.field - result.rows[i - 1].*c.field);
            worst = std::min(worst, step);
        }
        if (worst < -1e-9) failing += std::string(" ") + c.name + "(" + experiments::format_number(worst) + ")";
    }
    const bool ok = result.rows.size() == 11 && failing.empty();
    return {ok, ok ? "all 8 columns monotone over 11 rows"
                   : "columns violating monotonicity, worst step:" + failing};
}

Outcome criterion_10() {
    const auto start = Clock::now();
    OfdmParams orthogonal = OfdmParams::reference_grid();
    orthogonal.guard_interval = 0.0;
    std::mt19937_64 gen(1010);
    std::vector<double> random_powers = random_cnr(gen, orthogonal.n_subcarriers, 0.01, 1.0);
    const double total = std::accumulate(random_powers.begin(), random_powers.end(), 0.0);
    for (double& p : random_powers) p /= total;
    const double err_a = std::max(
        approximation_report(PowerAllocation::uniform(orthogonal.n_subcarriers).powers, orthogonal).max_error,
        approximation_report(random_powers, orthogonal).max_error);

    const OfdmParams ref = OfdmParams::reference_grid();
    const std::vector<double> uniform = PowerAllocation::uniform(ref.n_subcarriers).powers;
    const ApproximationReport approx = approximation_report(uniform, ref);
    const double df_ts = ref.subcarrier_spacing * ref.symbol_duration();
    double err_b = 0.0;
    double oracle_gap = 0.0;
    for (std::size_t m = 0; m < ref.n_subcarriers; ++m) {
        const double direct = oracle::cross_term_fraction(uniform, df_ts, m);
        err_b = std::max(err_b, direct);
        oracle_gap = std::max(oracle_gap, std::abs(direct - approx.relative_error[m].value_or(-1.0)));
    }

    const Scenario sc = baseline_scenario(5.0, 0.5);
    const std::vector<double> powers = experiments::run_plan(sc).solution.allocation.powers;
    const MonteCarloSpectrum mc = monte_carlo_power_spectrum(powers, ref, 10000, 7);
    double worst_z = 0.0;
    for (std::size_t m = 0; m < ref.n_subcarriers; ++m) {
        const double expected = expected_power_spectrum(powers, ref, ref.subcarrier_frequency(m));
        worst_z = std::max(worst_z, std::abs(mc.mean[m] - expected) / mc.standard_error(m));
    }
    const double elapsed = seconds_since(start);
    const bool ok = err_a <= 1e-12 && err_b <= 0.15 && oracle_gap <= 1e-12 && worst_z <= 4.0 && elapsed < 120.0;
    return {ok, fmt("(a) max error with T_g = 0: %.3g; (b) max cross-term fraction %.6g; ", err_a, err_b) +
                    fmt("(c) max |z| %.3f over 10^4 trials; %.1f s", worst_z, elapsed)};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome criterion_11() {
    const std::filesystem::path dir = std::filesystem::temp_directory_path() / "ircw_acceptance_determinism";
    std::filesystem::create_directories(dir);
    struct Run {
        std::string command;
        std::string scenario;
        std::vector<std::string> extra;
    };
    const std::vector<Run> runs = {
        {"plan", "baseline.json", {}},
        {"sweep-snr", "snr_sweep.json", {}},
        {"sweep-width", "width_fixed_lower.json", {}},
        {"sweep-width", "width_fixed_upper.json", {}},
        {"tradeoff", "tradeoff.json", {}},
        {"verify-spectrum", "baseline.json", {"--trials", "200"}},
        {"verify", "baseline.json", {}},
    };
    std::string failing;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        std::string outputs[2];
        std::string sidecars[2];
        int codes[2];
        for (int rep = 0; rep < 2; ++rep) {
            const std::filesystem::path out = dir / ("run" + std::to_string(i) + "_" + std::to_string(rep) + ".out");
            std::vector<std::string> args = {"ircw", runs[i].command, "--scenario",
                                             (scenario_dir() / runs[i].scenario).string(),
                                             "--seed", "7", "--out", out.string()};
            args.insert(args.end(), runs[i].extra.begin(), runs[i].extra.end());
            std::vector<const char*> argv;
            for (const auto& a : args) argv.push_back(a.c_str());
            codes[rep] = cli::run(static_cast<int>(argv.size()), argv.data());
            outputs[rep] = slurp(out);
            sidecars[rep] = slurp(out.string() + ".meta.json");
        }
        if (codes[0] != 0 || codes[1] != 0 || outputs[0].empty() || outputs[0] != outputs[1] ||
            sidecars[0] != sidecars[1])
            failing += " " + runs[i].command + "(" + runs[i].scenario + ")";
    }
    std::filesystem::remove_all(dir);
    return {failing.empty(), failing.empty() ? std::to_string(runs.size()) + " subcommand runs byte-identical"
                                             : "differing or failing runs:" + failing};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
        {"1 water-filling exactness", criterion_1},
        {"2 robust closed form vs grid search", criterion_2},
        {"3 weight-degeneracy reductions", criterion_3},
        {"4 KKT residual on baseline scenario", criterion_4},
        {"5 saddle-point property", criterion_5},
        {"6 response extremes bracket the criterion", criterion_6},
        {"7 worst allocation and concentration", criterion_7},
        {"8 robust dominance at lower bounds", criterion_8},
        {"9 trade-off monotonicity", criterion_9},
        {"10 spectral approximation", criterion_10},
        {"11 CLI determinism", criterion_11},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.passed) ++failed;
        std::printf("criterion %s: %s  %s\n", name, o.passed ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
