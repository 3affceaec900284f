// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ircw/error.hpp"
#include "ircw/experiments.hpp"
#include "ircw/spectrum_validator.hpp"

namespace ircw::cli {

namespace {

using experiments::format_number;
using nlohmann::ordered_json;

struct CommonOptions {
    std::string scenario_path;
    std::string out_path;
    std::uint64_t seed = 7;
    std::optional<double> w_c;
    std::optional<double> budget;
};

struct SpectrumOptions {
    std::size_t trials = 1000;
    std::string allocation = "robust";
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--scenario", opts.scenario_path, "Scenario JSON file")->check(CLI::ExistingFile);
    cmd->add_option("--out", opts.out_path, "Output file (stdout if omitted)");
    cmd->add_option("--seed", opts.seed, "Random seed")->capture_default_str();
    cmd->add_option("--wc", opts.w_c, "Communications weight, overrides the scenario");
    cmd->add_option("--budget", opts.budget, "Total power budget, overrides the scenario");
}

Scenario load(const CommonOptions& opts) {
    Scenario sc;
    if (opts.scenario_path.empty()) {
        sc.noise.snr_db = 5.0;
    } else {
        sc = load_scenario(opts.scenario_path);
    }
    if (opts.w_c) sc.w_c = *opts.w_c;
    if (opts.budget) sc.budget = *opts.budget;
    sc.validate();
    return sc;
}

/// Writes to --out when given, otherwise to stdout.
class Sink {
  public:
    explicit Sink(const std::string& path) {
        if (path.empty()) return;
        file_.open(path, std::ios::binary | std::ios::trunc);
        if (!file_) throw ConfigError("cannot open output file " + path);
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

void write_sidecar(const CommonOptions& opts, const ordered_json& meta) {
    if (opts.out_path.empty()) return;
    std::ofstream out(opts.out_path + ".meta.json", std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open metadata file for " + opts.out_path);
    out << meta.dump(2) << '\n';
}

ordered_json metadata_json(const experiments::RunMetadata& m, std::uint64_t seed) {
    ordered_json j;
    j["axis"] = m.axis;
    j["bound_family"] = m.bound_family;
    j["specific_response"] = m.specific_response;
    j["normalizers"] = m.normalizers;
    j["w_c"] = m.w_c;
    j["budget"] = m.budget;
    j["seed"] = seed;
    j["radar_normalizer_bits"] = m.radar_normalizer;
    j["comm_normalizer_bits_per_s"] = m.comm_normalizer;
    return j;
}

int emit_sweep(const CommonOptions& opts, const experiments::ExperimentResult& result) {
    Sink sink(opts.out_path);
    experiments::write_rows_csv(sink.stream(), result.rows);
    write_sidecar(opts, metadata_json(result.metadata, opts.seed));
    return kExitOk;
}

int cmd_plan(const CommonOptions& opts) {
    const Scenario sc = load(opts);
    const experiments::PlanResult plan = experiments::run_plan(sc);
    const OfdmParams& p = sc.ofdm;
    const double mi_scale = p.subcarrier_spacing * p.pulse_duration() / 2.0;
    const auto& powers = plan.solution.allocation.powers;

    Sink sink(opts.out_path);
    std::ostream& out = sink.stream();
    out << "subcarrier,frequency_hz,power,multiplier,mi_lower,dir_lower,mi_upper,dir_upper\n";
    for (std::size_t m = 0; m < powers.size(); ++m) {
        const double q = powers[m];
        out << m << ',' << format_number(p.subcarrier_frequency(m)) << ',' << format_number(q) << ','
            << format_number(plan.solution.multiplier) << ','
            << format_number(mi_scale * std::log2(1.0 + q * plan.lower_cnr.radar_cnr[m])) << ','
            << format_number(p.subcarrier_spacing * std::log2(1.0 + q * plan.lower_cnr.comm_cnr[m])) << ','
            << format_number(mi_scale * std::log2(1.0 + q * plan.upper_cnr.radar_cnr[m])) << ','
            << format_number(p.subcarrier_spacing * std::log2(1.0 + q * plan.upper_cnr.comm_cnr[m]))
            << '\n';
    }

    ordered_json meta;
    meta["bound_family"] = to_string(sc.bounds.kind);
    meta["w_c"] = sc.w_c;
    meta["budget"] = sc.budget;
    meta["multiplier"] = plan.solution.multiplier;
    meta["kkt_residual"] = plan.solution.kkt_residual;
    meta["bisection_iterations"] = plan.solution.iterations;
    meta["radar_normalizer_bits"] = plan.normalizers.radar;
    meta["comm_normalizer_bits_per_s"] = plan.normalizers.comm;
    meta["mi_lower_bits"] = plan.mi_lower;
    meta["dir_lower_bits_per_s"] = plan.dir_lower;
    meta["mi_upper_bits"] = plan.mi_upper;
    meta["dir_upper_bits_per_s"] = plan.dir_upper;
    write_sidecar(opts, meta);
    return kExitOk;
}

int cmd_verify_spectrum(const CommonOptions& opts, const SpectrumOptions& spec_opts) {
    const Scenario sc = load(opts);
    const OfdmParams& p = sc.ofdm;
    std::vector<double> powers;
    if (spec_opts.allocation == "uniform") {
        powers = PowerAllocation::uniform(p.n_subcarriers, sc.budget).powers;
    } else {
        powers = experiments::run_plan(sc).solution.allocation.powers;
    }

    const ApproximationReport approx = approximation_report(powers, p);
    std::optional<MonteCarloSpectrum> mc;
    if (spec_opts.trials > 0) mc = monte_carlo_power_spectrum(powers, p, spec_opts.trials, opts.seed);

    const double ts = p.symbol_duration();
    const double scale = ts * ts * static_cast<double>(p.n_symbols);
    constexpr double kMaxCrossTerm = 0.15;
    constexpr double kMaxZ = 4.0;
    // The cross-term bound is a property of the uniform allocation only.
    bool ok = spec_opts.allocation != "uniform" || approx.max_error <= kMaxCrossTerm;

    Sink sink(opts.out_path);
    std::ostream& out = sink.stream();
    out << "subcarrier,frequency_hz,power,approx_psd,expected_psd,relative_error";
    if (mc) out << ",mc_mean,mc_standard_error,z_score";
    out << '\n';
    for (std::size_t m = 0; m < powers.size(); ++m) {
        const double f = p.subcarrier_frequency(m);
        const double expected = expected_power_spectrum(powers, p, f);
        out << m << ',' << format_number(f) << ',' << format_number(powers[m]) << ','
            << format_number(scale * powers[m]) << ',' << format_number(expected) << ','
            << (approx.relative_error[m] ? format_number(*approx.relative_error[m]) : "");
        if (mc) {
            const double se = mc->standard_error(m);
            const double diff = mc->mean[m] - expected;
            const double z = se > 0.0 ? diff / se : 0.0;
            if (std::abs(diff) > kMaxZ * se + 1e-12 * std::abs(expected)) ok = false;
            out << ',' << format_number(mc->mean[m]) << ',' << format_number(se) << ',' << format_number(z);
        }
        out << '\n';
    }

    ordered_json meta;
    meta["allocation"] = spec_opts.allocation;
    meta["trials"] = spec_opts.trials;
    meta["seed"] = opts.seed;
    meta["max_relative_error"] = approx.max_error;
    meta["passed"] = ok;
    write_sidecar(opts, meta);
    return ok ? kExitOk : kExitVerification;
}

int cmd_verify(const CommonOptions& opts, bool corrupt) {
    const Scenario sc = load(opts);
    experiments::VerificationOptions vopts;
    if (corrupt) {
        vopts.solution_hook = [](RobustSolution& s) {
            auto& q = s.allocation.powers;
            if (q.size() < 2) {
                q.front() *= 1.01;
                return;
            }
            const double moved = 0.25 * q.front();
            q.front() -= moved;
            q.back() += moved + 1e-3 * s.allocation.budget;
        };
    }
    const experiments::VerificationReport report = experiments::run_verifications(sc, opts.seed, vopts);

    ordered_json j;
    j["seed"] = opts.seed;
    j["passed"] = report.passed();
    j["checks"] = ordered_json::array();
    for (const auto& c : report.checks) {
        ordered_json entry;
        entry["name"] = c.name;
        entry["passed"] = c.passed;
        entry["value"] = c.value;
        entry["threshold"] = c.threshold;
        entry["detail"] = c.detail;
        j["checks"].push_back(entry);
    }
    Sink sink(opts.out_path);
    sink.stream() << j.dump(2) << '\n';
    return report.passed() ? kExitOk : kExitVerification;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Robust OFDM radar-communications power allocation"};
    app.require_subcommand(1);

    CommonOptions opts;
    SpectrumOptions spec_opts;
    bool corrupt = false;

    auto* plan = app.add_subcommand("plan", "Robust allocation for one scenario");
    auto* snr = app.add_subcommand("sweep-snr", "Robust vs non-robust designs across SNR");
    auto* width = app.add_subcommand("sweep-width", "Robust vs non-robust designs across bound width");
    auto* tradeoff = app.add_subcommand("tradeoff", "Designs across the communications weight");
    auto* vspec = app.add_subcommand("verify-spectrum", "Per-subcarrier spectral approximation error");
    auto* verify = app.add_subcommand("verify", "Run the verification suite, JSON report");
    for (auto* cmd : {plan, snr, width, tradeoff, vspec, verify}) add_common(cmd, opts);
    vspec->add_option("--trials", spec_opts.trials, "Monte Carlo trials, 0 to skip")->capture_default_str();
    vspec->add_option("--allocation", spec_opts.allocation, "Allocation to test")
        ->check(CLI::IsMember({"robust", "uniform"}))
        ->capture_default_str();
    verify->add_flag("--corrupt-solution", corrupt)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*plan) return cmd_plan(opts);
        if (*snr) return emit_sweep(opts, experiments::run_snr_sweep(load(opts)));
        if (*width) return emit_sweep(opts, experiments::run_width_sweep(load(opts)));
        if (*tradeoff) return emit_sweep(opts, experiments::run_tradeoff(load(opts)));
        if (*vspec) return cmd_verify_spectrum(opts, spec_opts);
        if (*verify) return cmd_verify(opts, corrupt);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitFailure;
}

}  // namespace ircw::cli
