// SPDX-License-Identifier: Apache-2.0

#include "ircw/spectrum_validator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ircw/error.hpp"

namespace ircw {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUnitModulusTolerance = 1e-12;
constexpr double kBudgetSlack = 1e-9;

void check_powers(std::span<const double> powers, const OfdmParams& params) {
    params.validate();
    detail::require_same_size(powers.size(), params.n_subcarriers, "powers");
    for (std::size_t m = 0; m < powers.size(); ++m) {
        if (powers[m] < 0.0 || !std::isfinite(powers[m]))
            throw DomainError("negative power at subcarrier " + std::to_string(m));
    }
}

/// Evaluates S(f_m) for every m as T_s Σ_n P[m,n] Σ_{m'} A[m,m'] c_{m',n}.
class SubcarrierKernel {
  public:
    SubcarrierKernel(const OfdmParams& params, std::span<const Complex> weights)
        : n_c_(params.n_subcarriers),
          n_s_(params.n_symbols),
          ts_(params.symbol_duration()),
          mix_(n_c_ * n_c_),
          phase_(n_c_ * n_s_) {
        const double df_ts = params.subcarrier_spacing * ts_;
        for (std::size_t m = 0; m < n_c_; ++m) {
            for (std::size_t k = 0; k < n_c_; ++k) {
                const double offset = static_cast<double>(m) - static_cast<double>(k);
                const Complex rot = std::polar(1.0, -kPi * static_cast<double>(k) * df_ts);
                mix_[m * n_c_ + k] = weights[k] * rot * sinc(kPi * offset * df_ts);
            }
            for (std::size_t n = 0; n < n_s_; ++n) {
                const double lag = (static_cast<double>(n) - 0.5) * ts_;
                phase_[m * n_s_ + n] =
                    std::polar(1.0, -2.0 * kPi * static_cast<double>(m) * params.subcarrier_spacing * lag);
            }
        }
    }

    void power(std::span<const Complex> codes, std::vector<double>& out) const {
        out.assign(n_c_, 0.0);
        for (std::size_t m = 0; m < n_c_; ++m) {
            const Complex* row = &mix_[m * n_c_];
            Complex s{0.0, 0.0};
            for (std::size_t n = 0; n < n_s_; ++n) {
                double re = 0.0;
                double im = 0.0;
                for (std::size_t k = 0; k < n_c_; ++k) {
                    const Complex& a = row[k];
                    const Complex& c = codes[k * n_s_ + n];
                    re += a.real() * c.real() - a.imag() * c.imag();
                    im += a.real() * c.imag() + a.imag() * c.real();
                }
                s += phase_[m * n_s_ + n] * Complex{re, im};
            }
            out[m] = std::norm(ts_ * s);
        }
    }

  private:
    std::size_t n_c_;
    std::size_t n_s_;
    double ts_;
    std::vector<Complex> mix_;
    std::vector<Complex> phase_;
};

Complex draw_code(CodeEnsemble ensemble, Rng& rng) {
    const double u = rng.uniform();
    switch (ensemble) {
        case CodeEnsemble::qpsk: {
            const double k = std::floor(4.0 * u);
            return std::polar(1.0, kPi * (2.0 * k + 1.0) / 4.0);
        }
        case CodeEnsemble::uniform_phase:
        default:
            return std::polar(1.0, 2.0 * kPi * u);
    }
}

}  // namespace

double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

void WaveformSpec::validate() const {
    params.validate();
    detail::require_same_size(weights.size(), params.n_subcarriers, "weights");
    detail::require_same_size(codes.size(), params.n_subcarriers * params.n_symbols, "codes");
    for (std::size_t i = 0; i < codes.size(); ++i) {
        if (std::abs(std::abs(codes[i]) - 1.0) > kUnitModulusTolerance)
            throw DomainError("code symbol " + std::to_string(i) + " is not unit modulus");
    }
    double energy = 0.0;
    for (const Complex& a : weights) energy += std::norm(a);
    if (!std::isfinite(energy) || energy > budget + kBudgetSlack)
        throw DomainError("weights exceed the power budget");
}

std::vector<Complex> random_codes(const OfdmParams& params, CodeEnsemble ensemble, Rng& rng) {
    std::vector<Complex> codes(params.n_subcarriers * params.n_symbols);
    for (Complex& c : codes) c = draw_code(ensemble, rng);
    return codes;
}

WaveformSpec make_waveform(const OfdmParams& params, std::span<const double> powers,
                           double budget) {
    check_powers(powers, params);
    WaveformSpec spec{params, std::vector<Complex>(powers.size()),
                      std::vector<Complex>(params.n_subcarriers * params.n_symbols, Complex{1.0, 0.0}),
                      budget};
    for (std::size_t m = 0; m < powers.size(); ++m) spec.weights[m] = std::sqrt(powers[m]);
    spec.validate();
    return spec;
}

Complex spectrum(const WaveformSpec& spec, double f) {
    spec.validate();
    const OfdmParams& p = spec.params;
    const double ts = p.symbol_duration();
    const double df_ts = p.subcarrier_spacing * ts;
    const double baseband = f - p.carrier_frequency;

    Complex total{0.0, 0.0};
    for (std::size_t m = 0; m < p.n_subcarriers; ++m) {
        const double md = static_cast<double>(m);
        const double envelope = sinc(kPi * (baseband - md * p.subcarrier_spacing) * ts);
        const Complex rot = std::polar(1.0, -kPi * md * df_ts);
        Complex symbols{0.0, 0.0};
        for (std::size_t n = 0; n < p.n_symbols; ++n) {
            const double lag = (static_cast<double>(n) - 0.5) * ts;
            symbols += spec.code(m, n) * std::polar(1.0, -2.0 * kPi * baseband * lag);
        }
        total += spec.weights[m] * rot * envelope * symbols;
    }
    return ts * total;
}

std::vector<double> subcarrier_power_spectrum(const WaveformSpec& spec) {
    spec.validate();
    SubcarrierKernel kernel(spec.params, spec.weights);
    std::vector<double> out;
    kernel.power(spec.codes, out);
    return out;
}

double expected_power_spectrum(std::span<const double> powers, const OfdmParams& params, double f) {
    check_powers(powers, params);
    const double ts = params.symbol_duration();
    const double baseband = f - params.carrier_frequency;
    double acc = 0.0;
    for (std::size_t m = 0; m < powers.size(); ++m) {
        const double s =
            sinc(kPi * (baseband - static_cast<double>(m) * params.subcarrier_spacing) * ts);
        acc += powers[m] * s * s;
    }
    return ts * ts * static_cast<double>(params.n_symbols) * acc;
}

ApproximationReport approximation_report(std::span<const double> powers,
                                         const OfdmParams& params) {
    check_powers(powers, params);
    const double ts = params.symbol_duration();
    const double scale = ts * ts * static_cast<double>(params.n_symbols);

    ApproximationReport report;
    report.relative_error.resize(powers.size());
    for (std::size_t m = 0; m < powers.size(); ++m) {
        if (!(powers[m] > 0.0)) continue;
        const double exact = expected_power_spectrum(powers, params, params.subcarrier_frequency(m));
        const double approx = scale * powers[m];
        const double err = std::abs(exact - approx) / approx;
        report.relative_error[m] = err;
        report.max_error = std::max(report.max_error, err);
    }
    return report;
}

double MonteCarloSpectrum::standard_error(std::size_t m) const {
    return n_trials > 0 ? stddev.at(m) / std::sqrt(static_cast<double>(n_trials)) : 0.0;
}

MonteCarloSpectrum monte_carlo_power_spectrum(std::span<const double> powers,
                                              const OfdmParams& params, std::size_t n_trials,
                                              std::uint64_t seed, CodeEnsemble ensemble) {
    check_powers(powers, params);
    if (n_trials < 1) throw DomainError("monte_carlo_power_spectrum: need at least one trial");

    std::vector<Complex> weights(powers.size());
    for (std::size_t m = 0; m < powers.size(); ++m) weights[m] = std::sqrt(powers[m]);
    const SubcarrierKernel kernel(params, weights);

    const std::size_t n = params.n_subcarriers;
    std::vector<double> mean(n, 0.0);
    std::vector<double> m2(n, 0.0);
    std::vector<double> sample;
    for (std::size_t t = 0; t < n_trials; ++t) {
        Rng rng(seed, t);
        const std::vector<Complex> codes = random_codes(params, ensemble, rng);
        kernel.power(codes, sample);
        const double count = static_cast<double>(t + 1);
        for (std::size_t m = 0; m < n; ++m) {
            const double delta = sample[m] - mean[m];
            mean[m] += delta / count;
            m2[m] += delta * (sample[m] - mean[m]);
        }
    }

    MonteCarloSpectrum result{std::move(mean), std::vector<double>(n, 0.0), n_trials};
    if (n_trials > 1) {
        for (std::size_t m = 0; m < n; ++m)
            result.stddev[m] = std::sqrt(m2[m] / static_cast<double>(n_trials - 1));
    }
    return result;
}

double measure_papr(const WaveformSpec& spec, std::size_t oversampling) {
    spec.validate();
    if (oversampling < 4) throw DomainError("measure_papr: oversampling must be at least 4");

    const OfdmParams& p = spec.params;
    const double ts = p.symbol_duration();
    const double dt = p.elementary_duration() / static_cast<double>(oversampling * p.n_subcarriers);
    const auto n_samples = static_cast<std::size_t>(std::llround(p.pulse_duration() / dt));

    double peak = 0.0;
    double sum = 0.0;
    for (std::size_t k = 0; k < n_samples; ++k) {
        const double t = static_cast<double>(k) * dt;
        const auto n = std::min(static_cast<std::size_t>(t / ts), p.n_symbols - 1);
        const double local = t - static_cast<double>(n) * ts;
        Complex s{0.0, 0.0};
        for (std::size_t m = 0; m < p.n_subcarriers; ++m) {
            s += spec.weights[m] * spec.code(m, n) *
                 std::polar(1.0, 2.0 * kPi * static_cast<double>(m) * p.subcarrier_spacing * local);
        }
        const double power = std::norm(s);
        peak = std::max(peak, power);
        sum += power;
    }
    const double mean = sum / static_cast<double>(n_samples);
    if (!(mean > 0.0)) throw DomainError("measure_papr: waveform has zero energy");
    return peak / mean;
}

}  // namespace ircw
