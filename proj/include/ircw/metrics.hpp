// SPDX-License-Identifier: Apache-2.0
//
// Radar conditional mutual information, communications data information rate
// and their weighted, normalized combination.
//
// Everything is accumulated in nats and converted to bits once at the end.

#pragma once

#include <numbers>
#include <span>
#include <vector>

#include "ircw/ofdm_model.hpp"

namespace ircw {

inline constexpr double kLn2 = std::numbers::ln2;

/// Nonnegative per-subcarrier powers p_m = |a_m|² with Σ p_m <= budget.
struct PowerAllocation {
    std::vector<double> powers;
    double budget = 1.0;

    [[nodiscard]] std::size_t size() const { return powers.size(); }
    [[nodiscard]] double total() const;

    /// Throws DomainError on a negative entry, nonpositive budget or an
    /// overspent budget (slack 1e-9).
    void validate() const;

    static PowerAllocation zeros(std::size_t n, double budget = 1.0);
    static PowerAllocation uniform(std::size_t n, double budget = 1.0);
};

/// The pair of coefficients multiplying ln(1 + p ν) and ln(1 + p ϖ) in the
/// joint criterion.
struct JointCoefficients {
    double alpha = 0.0;  ///< α' = w_r Δf T_p / (2 ln2 F_r)
    double beta = 0.0;   ///< β' = w_c Δf / (ln2 F_c)
};

class ObjectiveConfig {
  public:
    /// Throws DomainError unless w_r, w_c in [0,1] with w_r + w_c = 1
    /// (1e-12) and both normalizers positive.
    ObjectiveConfig(const OfdmParams& params, double w_r, double w_c, double radar_normalizer,
                    double comm_normalizer);

    [[nodiscard]] double radar_weight() const { return w_r_; }
    [[nodiscard]] double comm_weight() const { return w_c_; }
    [[nodiscard]] double radar_normalizer() const { return f_r_; }  ///< bits
    [[nodiscard]] double comm_normalizer() const { return f_c_; }   ///< bits/s
    [[nodiscard]] const JointCoefficients& coefficients() const { return coeffs_; }

  private:
    double w_r_;
    double w_c_;
    double f_r_;
    double f_c_;
    JointCoefficients coeffs_;
};

/// (Δf T_p / 2) Σ log2(1 + p_m ν_m), in bits.
double mutual_information(const OfdmParams& params, const PowerAllocation& p,
                          const CnrProfile& cnr);

/// Σ Δf log2(1 + p_m ϖ_m), in bits/s.
double data_information_rate(const OfdmParams& params, const PowerAllocation& p,
                             const CnrProfile& cnr);

/// (w_r/F_r) MI + (w_c/F_c) DIR. Dimensionless.
double joint_criterion(const OfdmParams& params, const PowerAllocation& p, const CnrProfile& cnr,
                       const ObjectiveConfig& cfg);

/// Σ α' ln(1 + p_m ν_m) + β' ln(1 + p_m ϖ_m). Equal to joint_criterion for
/// coefficients taken from the same config.
double joint_criterion(std::span<const double> powers, const CnrProfile& cnr,
                       const JointCoefficients& coeffs);

/// Σ ln(1 + p_m c_m) in nats; the kernel shared by every metric.
double log_sum(std::span<const double> powers, std::span<const double> cnr);

struct Normalizers {
    double radar = 0.0;  ///< F_r, maximum MI (bits) at the class upper bounds
    double comm = 0.0;   ///< F_c, maximum DIR (bits/s) at the class upper bounds
};

Normalizers compute_normalizers(const OfdmParams& params, const NoiseModel& noise,
                                const UncertaintyClass& cls, double budget = 1.0);

/// Builds the objective for weight w_c (w_r = 1 - w_c) with normalizers
/// computed from the class upper bounds.
ObjectiveConfig make_objective_config(const OfdmParams& params, const NoiseModel& noise,
                                      const UncertaintyClass& cls, double w_c,
                                      double budget = 1.0);

}  // namespace ircw
