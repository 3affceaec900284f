// SPDX-License-Identifier: Apache-2.0
//
// Spectrum of the pulsed OFDM waveform and checks on the approximation
// U(f_m) ≈ T_s² N_s |a_m|² that lets per-subcarrier power stand in for the
// squared spectrum in the information metrics.
//
// The pulse is
//   s(t) = e^{j2πf_c t} Σ_n Σ_m a_m c_{m,n} e^{j2πmΔf(t - nT_s)} rect[(t - nT_s)/T_s]
// and its spectrum is evaluated as
//   S(f) = T_s Σ_n Σ_m a_m c_{m,n} e^{-jπmΔfT_s} sinc(π(f - f_m)T_s)
//          · e^{-j2π(f - f_c)(nT_s - T_s/2)}.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ircw/ofdm_model.hpp"
#include "ircw/random.hpp"

namespace ircw {

using Complex = std::complex<double>;

/// sin(x)/x with the removable singularity filled in.
double sinc(double x);

struct WaveformSpec {
    OfdmParams params;
    std::vector<Complex> weights;  ///< a_m, |a_m|² = p_m
    std::vector<Complex> codes;    ///< c_{m,n} at index m * N_s + n; unit modulus
    double budget = 1.0;

    [[nodiscard]] const Complex& code(std::size_t m, std::size_t n) const {
        return codes[m * params.n_symbols + n];
    }

    /// Throws on shape mismatch, non-unit codes (1e-12) or Σ|a|² > budget.
    void validate() const;
};

enum class CodeEnsemble {
    uniform_phase,  ///< e^{jθ}, θ ~ U[0, 2π)
    qpsk,           ///< e^{jπ(2k+1)/4}, k ~ U{0..3}
};

/// Independent unit-modulus codes, N_c × N_s, row-major by subcarrier.
std::vector<Complex> random_codes(const OfdmParams& params, CodeEnsemble ensemble, Rng& rng);

/// Real weights a_m = sqrt(p_m) with all codes equal to 1.
WaveformSpec make_waveform(const OfdmParams& params, std::span<const double> powers,
                           double budget = 1.0);

/// Direct summation of the spectrum at frequency f (Hz).
Complex spectrum(const WaveformSpec& spec, double f);

/// |S(f_m)|² at every subcarrier frequency.
std::vector<double> subcarrier_power_spectrum(const WaveformSpec& spec);

/// E[U(f)] = T_s² N_s Σ_m p_m sinc²(π(f - f_m)T_s) over the code ensemble.
double expected_power_spectrum(std::span<const double> powers, const OfdmParams& params, double f);

struct ApproximationReport {
    /// |E[U(f_m)] - T_s²N_s p_m| / (T_s²N_s p_m); empty where p_m = 0.
    std::vector<std::optional<double>> relative_error;
    double max_error = 0.0;
};

ApproximationReport approximation_report(std::span<const double> powers,
                                         const OfdmParams& params);

struct MonteCarloSpectrum {
    std::vector<double> mean;    ///< sample mean of U(f_m)
    std::vector<double> stddev;  ///< sample standard deviation of U(f_m)
    std::size_t n_trials = 0;

    [[nodiscard]] double standard_error(std::size_t m) const;
};

/// Sample statistics of U(f_m) over n_trials independent code matrices.
MonteCarloSpectrum monte_carlo_power_spectrum(std::span<const double> powers,
                                              const OfdmParams& params, std::size_t n_trials,
                                              std::uint64_t seed,
                                              CodeEnsemble ensemble = CodeEnsemble::uniform_phase);

/// Peak over mean instantaneous power of the baseband pulse sampled at
/// Δt = T/(oversampling · N_c). Requires oversampling >= 4.
double measure_papr(const WaveformSpec& spec, std::size_t oversampling);

}  // namespace ircw
