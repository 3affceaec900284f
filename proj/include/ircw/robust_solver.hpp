// SPDX-License-Identifier: Apache-2.0
//
// Minimax-robust power allocation over interval uncertainty classes.
//
// The worst case over the class is attained at the lower bounds, so the
// robust design maximizes the joint criterion at the lower-bound CNRs. Its
// KKT system has a per-subcarrier closed form in the multiplier μ' = 1/μ,
// and μ' is located by bisection on the total-power equality.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ircw/metrics.hpp"
#include "ircw/ofdm_model.hpp"

namespace ircw {

/// Reciprocal CNRs ν'_m = 1/ν_m and ϖ'_m = 1/ϖ_m.
struct InverseCnrs {
    std::vector<double> radar_inv;
    std::vector<double> comm_inv;

    [[nodiscard]] std::size_t size() const { return radar_inv.size(); }
    void validate() const;
};

InverseCnrs invert(const CnrProfile& cnr);

struct RobustSolution {
    PowerAllocation allocation;
    double multiplier = 0.0;        ///< μ'
    double worst_case_value = 0.0;  ///< joint criterion at the lower bounds
    double kkt_residual = 0.0;
    std::size_t iterations = 0;
};

inline constexpr double kBisectionTolerance = 1e-10;
inline constexpr std::size_t kMaxBisectionIterations = 200;

/// Per-subcarrier closed-form power at multiplier μ':
///   p_m = ½[μ'(α'+β') - (ν'_m+ϖ'_m) + √([(ϖ'_m-ν'_m) + μ'(α'-β')]² + 4μ'²α'β')]⁺
/// The returned vector is not normalized to any budget.
std::vector<double> closed_form_power(double mu_prime, const InverseCnrs& inv,
                                      const JointCoefficients& coeffs);

/// Upper end of the initial bisection bracket,
/// 1 / min_m {α'/(ν'_m + 1) + β'/(ϖ'_m + 1)}.
double initial_multiplier_bound(const InverseCnrs& inv, const JointCoefficients& coeffs);

/// Maximizes Σ α' ln(1 + p ν_m) + β' ln(1 + p ϖ_m) over the budget simplex
/// for the given (lower-bound) CNRs.
RobustSolution solve_robust(const CnrProfile& lower_cnr, const JointCoefficients& coeffs,
                            double budget = 1.0);

/// Robust allocation for an uncertainty class: the problem above on the
/// class lower bounds.
RobustSolution solve_robust(const OfdmParams& params, const NoiseModel& noise,
                            const UncertaintyClass& cls, const ObjectiveConfig& cfg,
                            double budget = 1.0);

/// Largest KKT violation, relative to μ = 1/μ': stationarity on active
/// subcarriers, dual feasibility on inactive ones, and |Σp - budget|.
double kkt_residual(const RobustSolution& solution, const InverseCnrs& inv,
                    const JointCoefficients& coeffs, double budget);

struct SaddlePointReport {
    std::size_t response_samples = 0;
    std::size_t allocation_samples = 0;
    /// min over sampled ρ of I(p_s, ρ) - I(p_s, l); nonnegative at a saddle
    double response_margin = 0.0;
    /// min over sampled p of I(p_s, l) - I(p, l); nonnegative at a saddle
    double allocation_margin = 0.0;
    std::size_t response_violations = 0;
    std::size_t allocation_violations = 0;
    double slack = 1e-9;

    [[nodiscard]] bool passed() const {
        return response_violations == 0 && allocation_violations == 0;
    }
};

/// Checks both saddle-point inequalities against explicit samples.
SaddlePointReport check_saddle_point(const OfdmParams& params, const NoiseModel& noise,
                                     const UncertaintyClass& cls, const ObjectiveConfig& cfg,
                                     const RobustSolution& solution,
                                     std::span<const ResponsePoint> responses,
                                     std::span<const PowerAllocation> allocations);

/// Draws n_samples responses uniformly inside the class and n_samples
/// allocations from a symmetric Dirichlet(1) scaled to the solution budget,
/// then runs check_saddle_point. Deterministic in `seed`.
SaddlePointReport verify_saddle_point(const OfdmParams& params, const NoiseModel& noise,
                                      const UncertaintyClass& cls, const ObjectiveConfig& cfg,
                                      const RobustSolution& solution, std::size_t n_samples,
                                      std::uint64_t seed);

std::vector<ResponsePoint> sample_responses(const UncertaintyClass& cls, std::size_t n,
                                            std::uint64_t seed);
std::vector<PowerAllocation> sample_allocations(std::size_t n_subcarriers, double budget,
                                                std::size_t n, std::uint64_t seed);

/// True iff putting the whole unit budget on subcarrier m1 satisfies the
/// closed form, i.e.
///   max_{m≠m1} {α'/ν'_m + β'/ϖ'_m} <= α'/(1+ν'_m1) + β'/(1+ϖ'_m1).
bool worst_allocation_condition(const InverseCnrs& inv, const JointCoefficients& coeffs,
                                std::size_t m1);

struct WorstAllocationReport {
    std::size_t minimizer = 0;  ///< subcarrier minimizing both ν and ϖ
    std::size_t grid_points = 0;
    double concentrated_value = 0.0;  ///< criterion with all power on minimizer
    double min_margin = 0.0;          ///< min over grid of I(p) - I(p_min)
    std::size_t violations = 0;

    [[nodiscard]] bool passed() const { return violations == 0; }
};

inline constexpr std::size_t kMaxWorstAllocationSubcarriers = 4;

/// Enumerates the budget simplex at `grid_step` and checks that no grid
/// allocation scores below the one concentrating everything on the joint
/// minimizer (slack 1e-12). Throws PreconditionError when no single index
/// minimizes both CNR vectors or when there are more than four subcarriers.
WorstAllocationReport verify_worst_allocation(const CnrProfile& cnr,
                                              const JointCoefficients& coeffs, double grid_step,
                                              double budget = 1.0);

}  // namespace ircw
