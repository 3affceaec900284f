// SPDX-License-Identifier: Apache-2.0
//
// OFDM grid, noise model, response uncertainty classes and the mapping from
// squared-magnitude frequency responses to per-subcarrier channel-to-noise
// ratios.

#pragma once

#include <cstddef>
#include <vector>

namespace ircw {

/// Pulsed OFDM grid: N_s consecutive symbols on N_c subcarriers.
struct OfdmParams {
    std::size_t n_subcarriers = 128;
    double subcarrier_spacing = 0.25e6;  ///< Hz
    double guard_interval = 1e-6;        ///< s
    std::size_t n_symbols = 16;
    double carrier_frequency = 0.0;  ///< Hz; only affects waveform synthesis

    /// T = 1/Δf
    [[nodiscard]] double elementary_duration() const { return 1.0 / subcarrier_spacing; }
    /// T_s = T + T_g
    [[nodiscard]] double symbol_duration() const { return elementary_duration() + guard_interval; }
    /// T_p = N_s T_s
    [[nodiscard]] double pulse_duration() const {
        return static_cast<double>(n_symbols) * symbol_duration();
    }
    /// f_m = f_c + m Δf
    [[nodiscard]] double subcarrier_frequency(std::size_t m) const {
        return carrier_frequency + static_cast<double>(m) * subcarrier_spacing;
    }

    /// Throws DomainError if any field is out of range.
    void validate() const;

    /// 128 subcarriers at 0.25 MHz, 1 us guard interval, 16 symbols.
    static OfdmParams reference_grid();
};

struct NoiseModel {
    std::vector<double> radar_noise_psd;  ///< N(f_m), W/Hz
    double comm_noise_power = 1.0;        ///< σ_c², W

    void validate(const OfdmParams& params) const;

    /// Flat radar PSD and equal communications noise power.
    static NoiseModel flat(const OfdmParams& params, double radar_psd, double comm_noise_power);

    /// Unit transmit power over the band with SNR(dB) = 10 log10(1/σ²):
    /// σ_c² = σ² and N(f_m) = σ²/Δf on every subcarrier.
    static NoiseModel from_snr_db(const OfdmParams& params, double snr_db);
};

/// Squared-magnitude response vectors ρ_gh = |G|²|H_r|² and ρ_h = |h|².
struct ResponsePoint {
    std::vector<double> radar_response;
    std::vector<double> comm_response;
};

/// Componentwise interval bounds on both squared-magnitude responses.
struct UncertaintyClass {
    std::vector<double> radar_lower;
    std::vector<double> radar_upper;
    std::vector<double> comm_lower;
    std::vector<double> comm_upper;

    [[nodiscard]] std::size_t size() const { return radar_lower.size(); }

    /// Throws DimensionError / DomainError unless 0 < l <= u componentwise.
    void validate() const;

    [[nodiscard]] bool contains(const ResponsePoint& point) const;

    [[nodiscard]] ResponsePoint lower() const { return {radar_lower, comm_lower}; }
    [[nodiscard]] ResponsePoint upper() const { return {radar_upper, comm_upper}; }
    [[nodiscard]] ResponsePoint midpoint() const;

    /// Single-point class l = u = point.
    static UncertaintyClass degenerate(const ResponsePoint& point);
};

struct CnrProfile {
    std::vector<double> radar_cnr;  ///< ν_m
    std::vector<double> comm_cnr;   ///< ϖ_m

    [[nodiscard]] std::size_t size() const { return radar_cnr.size(); }
    void validate() const;
};

/// ν_m = N_s T_s² ρ_gh,m / (N(f_m) T_p),  ϖ_m = ρ_h,m / σ_c².
CnrProfile cnr_from_response(const OfdmParams& params, const NoiseModel& noise,
                             const ResponsePoint& point);

enum class BoundFamily {
    baseline,     ///< Gaussian-shaped bounds of the reference experiment
    fixed_lower,  ///< baseline lower magnitudes, upper = lower + width
    fixed_upper,  ///< upper = 5.1 + Gaussian, lower = max(upper - width, ε)
};

struct BoundSpec {
    BoundFamily family = BoundFamily::baseline;
    double width = 0.0;  ///< magnitude offset swept by the width families
};

/// Floor on generated lower magnitudes in the fixed-upper family.
inline constexpr double kMinLowerMagnitude = 1e-3;

struct MagnitudeBounds {
    std::vector<double> radar_lower;
    std::vector<double> radar_upper;
    std::vector<double> comm_lower;
    std::vector<double> comm_upper;
};

/// Magnitude bounds |G_L|, |G_U|, |h_L|, |h_U| for a family.
MagnitudeBounds gaussian_magnitude_bounds(const OfdmParams& params, const BoundSpec& spec);

/// Squares the magnitude bounds into an uncertainty class.
UncertaintyClass gaussian_bounds(const OfdmParams& params, const BoundSpec& spec);

}  // namespace ircw
