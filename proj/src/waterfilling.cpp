// SPDX-License-Identifier: Apache-2.0

#include "ircw/waterfilling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ircw/error.hpp"

namespace ircw {

WaterfillResult waterfill(std::span<const double> cnr, double budget) {
    const std::size_t n = cnr.size();
    if (n == 0) throw DimensionError("waterfill: empty CNR vector");
    for (std::size_t m = 0; m < n; ++m) {
        if (!(cnr[m] > 0.0) || !std::isfinite(cnr[m]))
            throw DomainError("waterfill: CNR at " + std::to_string(m) + " must be positive");
    }
    if (!(budget >= 0.0) || !std::isfinite(budget))
        throw DomainError("waterfill: budget must be nonnegative");

    std::vector<double> inv(n);
    for (std::size_t m = 0; m < n; ++m) inv[m] = 1.0 / cnr[m];

    // Subcarriers in order of increasing inverse CNR; stable so ties keep
    // their index order.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return inv[a] < inv[b]; });

    WaterfillResult result;
    result.allocation = PowerAllocation::zeros(n, budget);

    if (budget == 0.0) {
        result.water_level = inv[order.front()];
        result.zero_budget = true;
        return result;
    }

    // With the k best subcarriers active the level is (budget + Σ_{i<k} inv)/k.
    // The first k whose level does not reach the next inverse CNR is optimal.
    double prefix = 0.0;
    double level = 0.0;
    std::size_t active = n;
    for (std::size_t k = 1; k <= n; ++k) {
        prefix += inv[order[k - 1]];
        level = (budget + prefix) / static_cast<double>(k);
        if (k == n || level <= inv[order[k]]) {
            active = k;
            break;
        }
    }

    result.water_level = level;
    for (std::size_t i = 0; i < active; ++i) {
        const std::size_t m = order[i];
        const double p = level - inv[m];
        if (p > 0.0) result.allocation.powers[m] = p;
    }
    for (std::size_t m = 0; m < n; ++m) {
        if (result.allocation.powers[m] > 0.0) result.active_set.push_back(m);
    }
    result.optimal_value = log_sum(result.allocation.powers, cnr);
    return result;
}

double waterfill_kkt_residual(std::span<const double> cnr, const WaterfillResult& result) {
    const auto& p = result.allocation.powers;
    detail::require_same_size(p.size(), cnr.size(), "waterfill result");
    const double level = result.water_level;
    double residual = std::abs(result.allocation.total() - result.allocation.budget);
    for (std::size_t m = 0; m < cnr.size(); ++m) {
        const double inv = 1.0 / cnr[m];
        if (p[m] > 0.0) {
            residual = std::max(residual, std::abs(p[m] - (level - inv)));
        } else {
            residual = std::max(residual, std::max(level - inv, 0.0));
        }
        if (p[m] < 0.0) residual = std::max(residual, -p[m]);
    }
    return residual;
}

WaterfillResult radar_optimal(const OfdmParams& params, const NoiseModel& noise,
                              const ResponsePoint& point, double budget) {
    const CnrProfile cnr = cnr_from_response(params, noise, point);
    WaterfillResult result = waterfill(cnr.radar_cnr, budget);
    result.optimal_value = mutual_information(params, result.allocation, cnr);
    return result;
}

WaterfillResult comm_optimal(const OfdmParams& params, const NoiseModel& noise,
                             const ResponsePoint& point, double budget) {
    const CnrProfile cnr = cnr_from_response(params, noise, point);
    WaterfillResult result = waterfill(cnr.comm_cnr, budget);
    result.optimal_value = data_information_rate(params, result.allocation, cnr);
    return result;
}

}  // namespace ircw
