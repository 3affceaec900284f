// SPDX-License-Identifier: Apache-2.0
//
// Scenario runners: robust versus non-robust designs evaluated at both
// extremes of the uncertainty class, across SNR, bound width or weight.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ircw/metrics.hpp"
#include "ircw/robust_solver.hpp"
#include "ircw/scenario.hpp"

namespace ircw::experiments {

struct ExperimentRow {
    double sweep_value = 0.0;
    double dir_robust_lower = 0.0;  ///< bits/s
    double dir_robust_upper = 0.0;
    double dir_nonrobust_lower = 0.0;
    double dir_nonrobust_upper = 0.0;
    double mi_robust_lower = 0.0;  ///< bits
    double mi_robust_upper = 0.0;
    double mi_nonrobust_lower = 0.0;
    double mi_nonrobust_upper = 0.0;
};

inline constexpr std::array<std::string_view, 9> kRowColumns = {
    "sweep_value",        "dir_robust_lower",    "dir_robust_upper",
    "dir_nonrobust_lower", "dir_nonrobust_upper", "mi_robust_lower",
    "mi_robust_upper",    "mi_nonrobust_lower",  "mi_nonrobust_upper"};

/// Describes how a run was set up so emitted data is self-describing.
struct RunMetadata {
    std::string axis;
    std::string bound_family;
    std::string specific_response;  ///< "class_midpoint" or "scenario"
    std::string normalizers;        ///< which class the normalizers came from
    double w_c = 0.0;
    double budget = 1.0;
    std::vector<double> radar_normalizer;  ///< per row
    std::vector<double> comm_normalizer;
};

struct ExperimentResult {
    std::vector<ExperimentRow> rows;
    RunMetadata metadata;
};

/// Robust and non-robust allocations for one class, both evaluated at the
/// class lower and upper bounds. The non-robust design is the robust solver
/// applied to the single-point class at `specific`.
ExperimentRow evaluate_designs(const OfdmParams& params, const NoiseModel& noise,
                               const UncertaintyClass& cls, const ResponsePoint& specific,
                               const ObjectiveConfig& cfg, double budget, double sweep_value);

ExperimentResult run_snr_sweep(const Scenario& scenario);

/// Width sweep for the fixed_lower / fixed_upper families. The normalizers
/// and the default specific response (class midpoint) come from the class at
/// the first, narrowest width and are held for every row.
ExperimentResult run_width_sweep(const Scenario& scenario);

ExperimentResult run_tradeoff(const Scenario& scenario);

struct PlanResult {
    UncertaintyClass cls;
    CnrProfile lower_cnr;
    CnrProfile upper_cnr;
    RobustSolution solution;
    Normalizers normalizers;
    double mi_lower = 0.0;
    double dir_lower = 0.0;
    double mi_upper = 0.0;
    double dir_upper = 0.0;
};

PlanResult run_plan(const Scenario& scenario);

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct VerificationReport {
    std::vector<CheckResult> checks;

    [[nodiscard]] bool passed() const;
};

struct VerificationOptions {
    std::size_t saddle_samples = 200;
    std::size_t bound_samples = 100;
    double worst_allocation_step = 0.01;
    /// Applied to the robust solution before any check runs.
    std::function<void(RobustSolution&)> solution_hook;
};

VerificationReport run_verifications(const Scenario& scenario, std::uint64_t seed,
                                     const VerificationOptions& options = {});

/// Header plus one line per row, 12 significant digits, LF endings.
void write_rows_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);

/// printf-style %.12g.
std::string format_number(double value);

}  // namespace ircw::experiments
