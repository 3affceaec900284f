// SPDX-License-Identifier: Apache-2.0
//
// Exact water-filling for max Σ log(1 + p_m c_m) subject to Σ p_m <= budget,
// p_m >= 0, and its two uses: radar MI and communications DIR maximization.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ircw/metrics.hpp"
#include "ircw/ofdm_model.hpp"

namespace ircw {

struct WaterfillResult {
    PowerAllocation allocation;
    double water_level = 0.0;              ///< λ; p_m = [λ - 1/c_m]⁺
    std::vector<std::size_t> active_set;   ///< ascending indices with p_m > 0
    /// Objective at the optimum: nats for waterfill(), bits for
    /// radar_optimal(), bits/s for comm_optimal().
    double optimal_value = 0.0;
    bool zero_budget = false;  ///< budget 0: all-zero allocation, λ = min 1/c
};

/// Finite-step sort-based water-filling. No iteration tolerance is involved.
/// Throws DimensionError for an empty vector, DomainError for a nonpositive
/// CNR or a negative budget.
WaterfillResult waterfill(std::span<const double> cnr, double budget = 1.0);

/// Largest violation of the water-filling KKT system for `result` on `cnr`:
/// active entries off p = λ - 1/c, inactive entries with λ > 1/c, and the
/// budget equality.
double waterfill_kkt_residual(std::span<const double> cnr, const WaterfillResult& result);

/// Maximizes MI over ν from cnr_from_response; optimal_value in bits.
WaterfillResult radar_optimal(const OfdmParams& params, const NoiseModel& noise,
                              const ResponsePoint& point, double budget = 1.0);

/// Maximizes DIR over ϖ from cnr_from_response; optimal_value in bits/s.
WaterfillResult comm_optimal(const OfdmParams& params, const NoiseModel& noise,
                             const ResponsePoint& point, double budget = 1.0);

}  // namespace ircw
