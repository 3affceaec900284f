// SPDX-License-Identifier: Apache-2.0

#include "ircw/ofdm_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ircw/error.hpp"

namespace ircw {

namespace {

void require_positive_entries(const std::vector<double>& v, const char* what) {
    for (std::size_t m = 0; m < v.size(); ++m) {
        if (!(v[m] > 0.0) || !std::isfinite(v[m])) {
            throw DomainError(std::string(what) + "[" + std::to_string(m) +
                              "] must be positive and finite");
        }
    }
}

}  // namespace

void OfdmParams::validate() const {
    if (n_subcarriers < 1) throw DomainError("n_subcarriers must be >= 1");
    if (!(subcarrier_spacing > 0.0) || !std::isfinite(subcarrier_spacing))
        throw DomainError("subcarrier_spacing must be positive");
    if (!(guard_interval >= 0.0) || !std::isfinite(guard_interval))
        throw DomainError("guard_interval must be nonnegative");
    if (n_symbols < 1) throw DomainError("n_symbols must be >= 1");
    if (!std::isfinite(carrier_frequency)) throw DomainError("carrier_frequency must be finite");
}

OfdmParams OfdmParams::reference_grid() { return OfdmParams{128, 0.25e6, 1e-6, 16, 0.0}; }

void NoiseModel::validate(const OfdmParams& params) const {
    detail::require_same_size(radar_noise_psd.size(), params.n_subcarriers, "radar_noise_psd");
    require_positive_entries(radar_noise_psd, "radar_noise_psd");
    if (!(comm_noise_power > 0.0) || !std::isfinite(comm_noise_power))
        throw DomainError("comm_noise_power must be positive");
}

NoiseModel NoiseModel::flat(const OfdmParams& params, double radar_psd, double comm_noise_power) {
    NoiseModel noise{std::vector<double>(params.n_subcarriers, radar_psd), comm_noise_power};
    noise.validate(params);
    return noise;
}

NoiseModel NoiseModel::from_snr_db(const OfdmParams& params, double snr_db) {
    if (!std::isfinite(snr_db)) throw DomainError("snr_db must be finite");
    const double sigma2 = std::pow(10.0, -snr_db / 10.0);
    return flat(params, sigma2 / params.subcarrier_spacing, sigma2);
}

void UncertaintyClass::validate() const {
    const std::size_t n = radar_lower.size();
    if (n == 0) throw DimensionError("uncertainty class is empty");
    detail::require_same_size(radar_upper.size(), n, "radar_upper");
    detail::require_same_size(comm_lower.size(), n, "comm_lower");
    detail::require_same_size(comm_upper.size(), n, "comm_upper");
    require_positive_entries(radar_lower, "radar_lower");
    require_positive_entries(comm_lower, "comm_lower");
    for (std::size_t m = 0; m < n; ++m) {
        if (!(radar_lower[m] <= radar_upper[m]) || !std::isfinite(radar_upper[m]))
            throw DomainError("radar bounds out of order at subcarrier " + std::to_string(m));
        if (!(comm_lower[m] <= comm_upper[m]) || !std::isfinite(comm_upper[m]))
            throw DomainError("comm bounds out of order at subcarrier " + std::to_string(m));
    }
}

bool UncertaintyClass::contains(const ResponsePoint& point) const {
    const std::size_t n = size();
    if (point.radar_response.size() != n || point.comm_response.size() != n) return false;
    for (std::size_t m = 0; m < n; ++m) {
        const double r = point.radar_response[m];
        const double c = point.comm_response[m];
        if (!(radar_lower[m] <= r && r <= radar_upper[m])) return false;
        if (!(comm_lower[m] <= c && c <= comm_upper[m])) return false;
    }
    return true;
}

ResponsePoint UncertaintyClass::midpoint() const {
    ResponsePoint mid{std::vector<double>(size()), std::vector<double>(size())};
    for (std::size_t m = 0; m < size(); ++m) {
        mid.radar_response[m] = 0.5 * (radar_lower[m] + radar_upper[m]);
        mid.comm_response[m] = 0.5 * (comm_lower[m] + comm_upper[m]);
    }
    return mid;
}

UncertaintyClass UncertaintyClass::degenerate(const ResponsePoint& point) {
    UncertaintyClass cls{point.radar_response, point.radar_response, point.comm_response,
                         point.comm_response};
    cls.validate();
    return cls;
}

void CnrProfile::validate() const {
    if (radar_cnr.empty()) throw DimensionError("CNR profile is empty");
    detail::require_same_size(comm_cnr.size(), radar_cnr.size(), "comm_cnr");
    require_positive_entries(radar_cnr, "radar_cnr");
    require_positive_entries(comm_cnr, "comm_cnr");
}

CnrProfile cnr_from_response(const OfdmParams& params, const NoiseModel& noise,
                             const ResponsePoint& point) {
    params.validate();
    const std::size_t n = params.n_subcarriers;
    detail::require_same_size(point.radar_response.size(), n, "radar_response");
    detail::require_same_size(point.comm_response.size(), n, "comm_response");
    noise.validate(params);
    require_positive_entries(point.radar_response, "radar_response");
    require_positive_entries(point.comm_response, "comm_response");

    const double ts = params.symbol_duration();
    const double scale = static_cast<double>(params.n_symbols) * ts * ts / params.pulse_duration();

    CnrProfile cnr{std::vector<double>(n), std::vector<double>(n)};
    for (std::size_t m = 0; m < n; ++m) {
        cnr.radar_cnr[m] = scale * point.radar_response[m] / noise.radar_noise_psd[m];
        cnr.comm_cnr[m] = point.comm_response[m] / noise.comm_noise_power;
    }
    return cnr;
}

MagnitudeBounds gaussian_magnitude_bounds(const OfdmParams& params, const BoundSpec& spec) {
    params.validate();
    if (!(spec.width >= 0.0) || !std::isfinite(spec.width))
        throw DomainError("bound width must be finite and nonnegative");

    const std::size_t n = params.n_subcarriers;
    const double nc = static_cast<double>(n);
    MagnitudeBounds b{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n),
                      std::vector<double>(n)};
    for (std::size_t m = 0; m < n; ++m) {
        const double x = static_cast<double>(m);
        const double zr = 2.0 * (x - nc / 2.0) / nc;
        const double zc = 3.0 * (x - nc / 2.0 - 30.0) / nc;
        const double radar_shape = std::exp(-zr * zr);
        const double comm_shape = std::exp(-zc * zc);

        switch (spec.family) {
            case BoundFamily::baseline:
                b.radar_lower[m] = radar_shape;
                b.radar_upper[m] = 2.0 + radar_shape;
                b.comm_lower[m] = comm_shape;
                b.comm_upper[m] = 1.5 + comm_shape;
                break;
            case BoundFamily::fixed_lower:
                b.radar_lower[m] = radar_shape;
                b.radar_upper[m] = radar_shape + spec.width;
                b.comm_lower[m] = comm_shape;
                b.comm_upper[m] = comm_shape + spec.width;
                break;
            case BoundFamily::fixed_upper:
                b.radar_upper[m] = 5.1 + radar_shape;
                b.radar_lower[m] = std::max(b.radar_upper[m] - spec.width, kMinLowerMagnitude);
                b.comm_upper[m] = 5.1 + comm_shape;
                b.comm_lower[m] = std::max(b.comm_upper[m] - spec.width, kMinLowerMagnitude);
                break;
        }
    }
    return b;
}

UncertaintyClass gaussian_bounds(const OfdmParams& params, const BoundSpec& spec) {
    const MagnitudeBounds mag = gaussian_magnitude_bounds(params, spec);
    auto square = [](std::vector<double> v) {
        for (double& x : v) x *= x;
        return v;
    };
    UncertaintyClass cls{square(mag.radar_lower), square(mag.radar_upper), square(mag.comm_lower),
                         square(mag.comm_upper)};
    cls.validate();
    return cls;
}

}  // namespace ircw
