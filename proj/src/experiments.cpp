// SPDX-License-Identifier: Apache-2.0

#include "ircw/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "ircw/error.hpp"
#include "ircw/spectrum_validator.hpp"
#include "ircw/waterfilling.hpp"

namespace ircw::experiments {

namespace {

constexpr double kKktThreshold = 1e-7;
constexpr double kBudgetThreshold = 1e-10;
constexpr double kOrderingSlack = 1e-9;
constexpr double kApproximationThreshold = 0.15;

ResponsePoint specific_for(const Scenario& sc, const UncertaintyClass& reference) {
    return sc.specific_response ? *sc.specific_response : reference.midpoint();
}

std::string specific_label(const Scenario& sc) {
    return sc.specific_response ? "scenario" : "class_midpoint";
}

void require_axis(const Scenario& sc, SweepAxis axis) {
    if (sc.sweep.axis != axis) {
        throw ConfigError("scenario sweep axis is \"" + std::string(to_string(sc.sweep.axis)) +
                          "\", expected \"" + std::string(to_string(axis)) + "\"");
    }
    if (sc.sweep.values.empty()) throw ConfigError("sweep values must be nonempty");
}

/// Wraps library errors raised by scenario inputs as configuration errors.
template <typename F>
auto as_config_errors(F&& body) {
    try {
        return body();
    } catch (const DimensionError& e) {
        throw ConfigError(e.what());
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    } catch (const PreconditionError& e) {
        throw ConfigError(e.what());
    }
}

/// Up to four subcarriers containing a joint minimizer of both CNR vectors,
/// or an empty list if the profile has none.
std::vector<std::size_t> worst_allocation_subset(const CnrProfile& cnr) {
    const std::size_t n = cnr.size();
    auto pick = [&](std::size_t pivot) {
        std::vector<std::size_t> dominated;
        for (std::size_t m = 0; m < n; ++m) {
            if (m != pivot && cnr.radar_cnr[m] >= cnr.radar_cnr[pivot] &&
                cnr.comm_cnr[m] >= cnr.comm_cnr[pivot])
                dominated.push_back(m);
        }
        std::vector<std::size_t> subset{pivot};
        const std::size_t extra = std::min<std::size_t>(kMaxWorstAllocationSubcarriers - 1, dominated.size());
        for (std::size_t i = 0; i < extra; ++i) {
            // evenly spread over the dominated candidates
            const std::size_t j = extra == 1 ? 0 : i * (dominated.size() - 1) / (extra - 1);
            subset.push_back(dominated[j]);
        }
        std::sort(subset.begin(), subset.end());
        return subset;
    };
    const auto radar_min = static_cast<std::size_t>(
        std::min_element(cnr.radar_cnr.begin(), cnr.radar_cnr.end()) - cnr.radar_cnr.begin());
    const auto comm_min = static_cast<std::size_t>(
        std::min_element(cnr.comm_cnr.begin(), cnr.comm_cnr.end()) - cnr.comm_cnr.begin());
    auto subset = pick(radar_min);
    if (subset.size() < 2) subset = pick(comm_min);
    if (subset.size() < 2) subset.clear();
    return subset;
}

}  // namespace

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

void write_rows_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
    for (std::size_t i = 0; i < kRowColumns.size(); ++i) out << (i ? "," : "") << kRowColumns[i];
    out << '\n';
    for (const ExperimentRow& r : rows) {
        const double values[] = {r.sweep_value,         r.dir_robust_lower,   r.dir_robust_upper,
                                 r.dir_nonrobust_lower, r.dir_nonrobust_upper, r.mi_robust_lower,
                                 r.mi_robust_upper,     r.mi_nonrobust_lower, r.mi_nonrobust_upper};
        for (std::size_t i = 0; i < std::size(values); ++i)
            out << (i ? "," : "") << format_number(values[i]);
        out << '\n';
    }
}

ExperimentRow evaluate_designs(const OfdmParams& params, const NoiseModel& noise,
                               const UncertaintyClass& cls, const ResponsePoint& specific,
                               const ObjectiveConfig& cfg, double budget, double sweep_value) {
    if (!cls.contains(specific))
        throw ConfigError("specific response lies outside the uncertainty class");

    const RobustSolution robust = solve_robust(params, noise, cls, cfg, budget);
    const RobustSolution nonrobust =
        solve_robust(params, noise, UncertaintyClass::degenerate(specific), cfg, budget);

    const CnrProfile lower = cnr_from_response(params, noise, cls.lower());
    const CnrProfile upper = cnr_from_response(params, noise, cls.upper());

    ExperimentRow row;
    row.sweep_value = sweep_value;
    row.dir_robust_lower = data_information_rate(params, robust.allocation, lower);
    row.dir_robust_upper = data_information_rate(params, robust.allocation, upper);
    row.dir_nonrobust_lower = data_information_rate(params, nonrobust.allocation, lower);
    row.dir_nonrobust_upper = data_information_rate(params, nonrobust.allocation, upper);
    row.mi_robust_lower = mutual_information(params, robust.allocation, lower);
    row.mi_robust_upper = mutual_information(params, robust.allocation, upper);
    row.mi_nonrobust_lower = mutual_information(params, nonrobust.allocation, lower);
    row.mi_nonrobust_upper = mutual_information(params, nonrobust.allocation, upper);
    return row;
}

ExperimentResult run_snr_sweep(const Scenario& sc) {
    sc.validate();
    require_axis(sc, SweepAxis::snr_db);
    return as_config_errors([&] {
        const UncertaintyClass cls = sc.bounds.build(sc.ofdm);
        const ResponsePoint specific = specific_for(sc, cls);

        ExperimentResult result;
        result.metadata = {"snr_db", std::string(to_string(sc.bounds.kind)), specific_label(sc),
                           "class upper bounds at each SNR", sc.w_c, sc.budget, {}, {}};
        for (double snr : sc.sweep.values) {
            const NoiseModel noise = NoiseModel::from_snr_db(sc.ofdm, snr);
            const ObjectiveConfig cfg = make_objective_config(sc.ofdm, noise, cls, sc.w_c, sc.budget);
            result.rows.push_back(evaluate_designs(sc.ofdm, noise, cls, specific, cfg, sc.budget, snr));
            result.metadata.radar_normalizer.push_back(cfg.radar_normalizer());
            result.metadata.comm_normalizer.push_back(cfg.comm_normalizer());
        }
        return result;
    });
}

ExperimentResult run_width_sweep(const Scenario& sc) {
    sc.validate();
    require_axis(sc, SweepAxis::width);
    if (sc.bounds.kind != BoundsKind::fixed_lower && sc.bounds.kind != BoundsKind::fixed_upper)
        throw ConfigError("width sweeps need the fixed_lower or fixed_upper bound family");

    return as_config_errors([&] {
        const NoiseModel noise = sc.noise.build(sc.ofdm);
        const UncertaintyClass reference = sc.bounds.build(sc.ofdm, sc.sweep.values.front());
        const Normalizers f = compute_normalizers(sc.ofdm, noise, reference, sc.budget);
        const ObjectiveConfig cfg(sc.ofdm, 1.0 - sc.w_c, sc.w_c, f.radar, f.comm);
        const ResponsePoint specific = specific_for(sc, reference);

        ExperimentResult result;
        result.metadata = {"width", std::string(to_string(sc.bounds.kind)), specific_label(sc),
                           "class at the narrowest width", sc.w_c, sc.budget, {}, {}};
        for (double width : sc.sweep.values) {
            const UncertaintyClass cls = sc.bounds.build(sc.ofdm, width);
            if (!cls.contains(specific))
                throw ConfigError("specific response leaves the class at width " + format_number(width));
            result.rows.push_back(evaluate_designs(sc.ofdm, noise, cls, specific, cfg, sc.budget, width));
            result.metadata.radar_normalizer.push_back(f.radar);
            result.metadata.comm_normalizer.push_back(f.comm);
        }
        return result;
    });
}

ExperimentResult run_tradeoff(const Scenario& sc) {
    sc.validate();
    require_axis(sc, SweepAxis::w_c);
    return as_config_errors([&] {
        const NoiseModel noise = sc.noise.build(sc.ofdm);
        const UncertaintyClass cls = sc.bounds.build(sc.ofdm);
        const Normalizers f = compute_normalizers(sc.ofdm, noise, cls, sc.budget);
        const ResponsePoint specific = specific_for(sc, cls);

        ExperimentResult result;
        result.metadata = {"w_c", std::string(to_string(sc.bounds.kind)), specific_label(sc),
                           "class upper bounds", sc.w_c, sc.budget, {}, {}};
        for (double w_c : sc.sweep.values) {
            const ObjectiveConfig cfg(sc.ofdm, 1.0 - w_c, w_c, f.radar, f.comm);
            result.rows.push_back(evaluate_designs(sc.ofdm, noise, cls, specific, cfg, sc.budget, w_c));
            result.metadata.radar_normalizer.push_back(f.radar);
            result.metadata.comm_normalizer.push_back(f.comm);
        }
        return result;
    });
}

PlanResult run_plan(const Scenario& sc) {
    sc.validate();
    return as_config_errors([&] {
        const NoiseModel noise = sc.noise.build(sc.ofdm);
        PlanResult plan;
        plan.cls = sc.bounds.build(sc.ofdm);
        plan.normalizers = compute_normalizers(sc.ofdm, noise, plan.cls, sc.budget);
        const ObjectiveConfig cfg(sc.ofdm, 1.0 - sc.w_c, sc.w_c, plan.normalizers.radar,
                                  plan.normalizers.comm);
        plan.lower_cnr = cnr_from_response(sc.ofdm, noise, plan.cls.lower());
        plan.upper_cnr = cnr_from_response(sc.ofdm, noise, plan.cls.upper());
        plan.solution = solve_robust(plan.lower_cnr, cfg.coefficients(), sc.budget);
        plan.mi_lower = mutual_information(sc.ofdm, plan.solution.allocation, plan.lower_cnr);
        plan.dir_lower = data_information_rate(sc.ofdm, plan.solution.allocation, plan.lower_cnr);
        plan.mi_upper = mutual_information(sc.ofdm, plan.solution.allocation, plan.upper_cnr);
        plan.dir_upper = data_information_rate(sc.ofdm, plan.solution.allocation, plan.upper_cnr);
        return plan;
    });
}

bool VerificationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VerificationReport run_verifications(const Scenario& sc, std::uint64_t seed,
                                     const VerificationOptions& options) {
    sc.validate();
    return as_config_errors([&] {
        VerificationReport report;
        const OfdmParams& params = sc.ofdm;
        const NoiseModel noise = sc.noise.build(params);
        const UncertaintyClass cls = sc.bounds.build(params);
        const ObjectiveConfig cfg = make_objective_config(params, noise, cls, sc.w_c, sc.budget);
        const JointCoefficients& coeffs = cfg.coefficients();
        const CnrProfile lower = cnr_from_response(params, noise, cls.lower());
        const CnrProfile upper = cnr_from_response(params, noise, cls.upper());

        RobustSolution solution = solve_robust(lower, coeffs, sc.budget);
        if (options.solution_hook) options.solution_hook(solution);

        const double residual = kkt_residual(solution, invert(lower), coeffs, sc.budget);
        report.checks.push_back({"kkt_residual", residual <= kKktThreshold, residual, kKktThreshold,
                                 "max relative violation of the KKT system"});

        const double budget_error = std::abs(solution.allocation.total() - sc.budget);
        report.checks.push_back({"budget_equality", budget_error <= kBudgetThreshold, budget_error,
                                 kBudgetThreshold, "|sum p - budget|"});

        const SaddlePointReport saddle =
            verify_saddle_point(params, noise, cls, cfg, solution, options.saddle_samples, seed);
        report.checks.push_back({"saddle_response_side", saddle.response_violations == 0,
                                 saddle.response_margin, -saddle.slack,
                                 "min over sampled responses of I(p, rho) - I(p, lower); " +
                                     std::to_string(saddle.response_violations) + " violations"});
        report.checks.push_back({"saddle_allocation_side", saddle.allocation_violations == 0,
                                 saddle.allocation_margin, -saddle.slack,
                                 "min over sampled allocations of I(p, lower) - I(q, lower); " +
                                     std::to_string(saddle.allocation_violations) + " violations"});

        // For a fixed allocation the criterion is bracketed by its values at
        // the class bounds.
        const auto& p = solution.allocation.powers;
        const double at_lower = joint_criterion(p, lower, coeffs);
        const double at_upper = joint_criterion(p, upper, coeffs);
        double bound_margin = at_upper - at_lower;
        for (const ResponsePoint& rho : sample_responses(cls, options.bound_samples, seed + 1)) {
            const double value = joint_criterion(p, cnr_from_response(params, noise, rho), coeffs);
            bound_margin = std::min({bound_margin, at_upper - value, value - at_lower});
        }
        report.checks.push_back({"response_extremes", bound_margin >= -kOrderingSlack, bound_margin,
                                 -kOrderingSlack,
                                 "min of I(upper) - I(rho) and I(rho) - I(lower) over samples"});

        const std::vector<std::size_t> subset = worst_allocation_subset(lower);
        if (subset.empty()) {
            report.checks.push_back({"worst_allocation", true, 0.0, -1e-12,
                                     "skipped: no subcarrier pair with a joint CNR minimizer"});
        } else {
            CnrProfile sub;
            for (std::size_t m : subset) {
                sub.radar_cnr.push_back(lower.radar_cnr[m]);
                sub.comm_cnr.push_back(lower.comm_cnr[m]);
            }
            const WorstAllocationReport worst =
                verify_worst_allocation(sub, coeffs, options.worst_allocation_step, sc.budget);
            std::string detail = "subcarriers";
            for (std::size_t m : subset) detail += " " + std::to_string(m);
            detail += "; " + std::to_string(worst.grid_points) + " grid points";
            report.checks.push_back({"worst_allocation", worst.passed(), worst.min_margin, -1e-12, detail});
        }

        const ApproximationReport approx = approximation_report(
            PowerAllocation::uniform(params.n_subcarriers, sc.budget).powers, params);
        report.checks.push_back({"spectral_approximation", approx.max_error <= kApproximationThreshold,
                                 approx.max_error, kApproximationThreshold,
                                 "max relative cross-term error at f_m, uniform allocation"});
        return report;
    });
}

}  // namespace ircw::experiments
