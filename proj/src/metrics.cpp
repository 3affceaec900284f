// SPDX-License-Identifier: Apache-2.0

#include "ircw/metrics.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "ircw/error.hpp"
#include "ircw/waterfilling.hpp"

namespace ircw {

namespace {

constexpr double kWeightSumTolerance = 1e-12;
constexpr double kBudgetSlack = 1e-9;

void check_allocation_against(const PowerAllocation& p, const CnrProfile& cnr) {
    detail::require_same_size(p.size(), cnr.radar_cnr.size(), "power allocation");
    detail::require_same_size(cnr.comm_cnr.size(), cnr.radar_cnr.size(), "comm_cnr");
    for (std::size_t m = 0; m < p.size(); ++m) {
        if (p.powers[m] < 0.0 || !std::isfinite(p.powers[m]))
            throw DomainError("negative power at subcarrier " + std::to_string(m));
    }
}

}  // namespace

double PowerAllocation::total() const { return std::accumulate(powers.begin(), powers.end(), 0.0); }

void PowerAllocation::validate() const {
    if (!(budget > 0.0) || !std::isfinite(budget)) throw DomainError("budget must be positive");
    for (std::size_t m = 0; m < powers.size(); ++m) {
        if (powers[m] < 0.0 || !std::isfinite(powers[m]))
            throw DomainError("negative power at subcarrier " + std::to_string(m));
    }
    if (total() > budget + kBudgetSlack) throw DomainError("power allocation exceeds its budget");
}

PowerAllocation PowerAllocation::zeros(std::size_t n, double budget) {
    return {std::vector<double>(n, 0.0), budget};
}

PowerAllocation PowerAllocation::uniform(std::size_t n, double budget) {
    if (n == 0) throw DimensionError("uniform allocation over zero subcarriers");
    return {std::vector<double>(n, budget / static_cast<double>(n)), budget};
}

ObjectiveConfig::ObjectiveConfig(const OfdmParams& params, double w_r, double w_c,
                                 double radar_normalizer, double comm_normalizer)
    : w_r_(w_r), w_c_(w_c), f_r_(radar_normalizer), f_c_(comm_normalizer) {
    params.validate();
    if (!(w_r >= 0.0 && w_r <= 1.0) || !(w_c >= 0.0 && w_c <= 1.0))
        throw DomainError("weights must lie in [0, 1]");
    if (std::abs(w_r + w_c - 1.0) > kWeightSumTolerance)
        throw DomainError("weights must sum to 1");
    if (!(f_r_ > 0.0) || !(f_c_ > 0.0) || !std::isfinite(f_r_) || !std::isfinite(f_c_))
        throw DomainError("normalizers must be positive");

    const double df = params.subcarrier_spacing;
    coeffs_.alpha = w_r_ * df * params.pulse_duration() / (2.0 * kLn2 * f_r_);
    coeffs_.beta = w_c_ * df / (kLn2 * f_c_);
}

double log_sum(std::span<const double> powers, std::span<const double> cnr) {
    detail::require_same_size(powers.size(), cnr.size(), "power allocation");
    double acc = 0.0;
    for (std::size_t m = 0; m < powers.size(); ++m) acc += std::log1p(powers[m] * cnr[m]);
    return acc;
}

double mutual_information(const OfdmParams& params, const PowerAllocation& p,
                          const CnrProfile& cnr) {
    check_allocation_against(p, cnr);
    const double nats = log_sum(p.powers, cnr.radar_cnr);
    return 0.5 * params.subcarrier_spacing * params.pulse_duration() * nats / kLn2;
}

double data_information_rate(const OfdmParams& params, const PowerAllocation& p,
                             const CnrProfile& cnr) {
    check_allocation_against(p, cnr);
    return params.subcarrier_spacing * log_sum(p.powers, cnr.comm_cnr) / kLn2;
}

double joint_criterion(const OfdmParams& params, const PowerAllocation& p, const CnrProfile& cnr,
                       const ObjectiveConfig& cfg) {
    const double mi = mutual_information(params, p, cnr);
    const double dir = data_information_rate(params, p, cnr);
    return cfg.radar_weight() / cfg.radar_normalizer() * mi +
           cfg.comm_weight() / cfg.comm_normalizer() * dir;
}

double joint_criterion(std::span<const double> powers, const CnrProfile& cnr,
                       const JointCoefficients& coeffs) {
    detail::require_same_size(powers.size(), cnr.radar_cnr.size(), "power allocation");
    detail::require_same_size(cnr.comm_cnr.size(), cnr.radar_cnr.size(), "comm_cnr");
    double acc = 0.0;
    for (std::size_t m = 0; m < powers.size(); ++m) {
        acc += coeffs.alpha * std::log1p(powers[m] * cnr.radar_cnr[m]) +
               coeffs.beta * std::log1p(powers[m] * cnr.comm_cnr[m]);
    }
    return acc;
}

Normalizers compute_normalizers(const OfdmParams& params, const NoiseModel& noise,
                                const UncertaintyClass& cls, double budget) {
    cls.validate();
    const ResponsePoint upper = cls.upper();
    return {radar_optimal(params, noise, upper, budget).optimal_value,
            comm_optimal(params, noise, upper, budget).optimal_value};
}

ObjectiveConfig make_objective_config(const OfdmParams& params, const NoiseModel& noise,
                                      const UncertaintyClass& cls, double w_c, double budget) {
    const Normalizers f = compute_normalizers(params, noise, cls, budget);
    return ObjectiveConfig(params, 1.0 - w_c, w_c, f.radar, f.comm);
}

}  // namespace ircw
