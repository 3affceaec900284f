// SPDX-License-Identifier: Apache-2.0
//
// Scenario files: OFDM grid, noise, bound family and sweep axis in JSON.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ircw/ofdm_model.hpp"

namespace ircw {

struct NoiseSpec {
    std::optional<double> snr_db;      ///< when set, overrides the explicit fields
    std::vector<double> radar_psd;     ///< one entry broadcasts to all subcarriers
    double comm_noise_power = 1.0;

    [[nodiscard]] NoiseModel build(const OfdmParams& params) const;
};

enum class BoundsKind { baseline, fixed_lower, fixed_upper, explicit_class };

struct BoundsSpec {
    BoundsKind kind = BoundsKind::baseline;
    double width = 0.0;
    std::optional<UncertaintyClass> explicit_class;

    /// Class for this spec with the given width (ignored by baseline and
    /// explicit classes).
    [[nodiscard]] UncertaintyClass build(const OfdmParams& params, double width) const;
    [[nodiscard]] UncertaintyClass build(const OfdmParams& params) const {
        return build(params, width);
    }
};

enum class SweepAxis { none, snr_db, width, w_c };

struct Sweep {
    SweepAxis axis = SweepAxis::none;
    std::vector<double> values;
};

struct Scenario {
    OfdmParams ofdm;
    NoiseSpec noise;
    BoundsSpec bounds;
    double w_c = 0.5;
    double budget = 1.0;
    std::optional<ResponsePoint> specific_response;
    Sweep sweep;

    /// Throws ConfigError if the scenario is inconsistent: sweep values
    /// empty or unsorted, specific response outside the class, weights out
    /// of range, or an invalid grid or noise model.
    void validate() const;
};

std::string_view to_string(BoundsKind kind);
std::string_view to_string(SweepAxis axis);

Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace ircw
