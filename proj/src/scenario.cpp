// SPDX-License-Identifier: Apache-2.0

#include "ircw/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ircw/error.hpp"

namespace ircw {

namespace {

using nlohmann::json;

double number_at(const json& obj, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(std::string("missing field \"") + key + "\"");
    if (!it->is_number()) throw ConfigError(std::string("field \"") + key + "\" must be a number");
    return it->get<double>();
}

double number_or(const json& obj, const char* key, double fallback) {
    return obj.contains(key) ? number_at(obj, key) : fallback;
}

std::size_t count_at(const json& obj, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(std::string("missing field \"") + key + "\"");
    if (!it->is_number_integer() || it->get<long long>() < 1)
        throw ConfigError(std::string("field \"") + key + "\" must be a positive integer");
    return it->get<std::size_t>();
}

std::vector<double> vector_of(const json& value, const char* what) {
    if (value.is_number()) return {value.get<double>()};
    if (!value.is_array()) throw ConfigError(std::string(what) + " must be a number or an array");
    std::vector<double> out;
    out.reserve(value.size());
    for (const json& v : value) {
        if (!v.is_number()) throw ConfigError(std::string(what) + " must contain numbers only");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<double> array_at(const json& obj, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(std::string("missing field \"") + key + "\"");
    if (!it->is_array()) throw ConfigError(std::string("field \"") + key + "\" must be an array");
    return vector_of(*it, key);
}

BoundsKind parse_kind(const std::string& name) {
    if (name == "baseline") return BoundsKind::baseline;
    if (name == "fixed_lower") return BoundsKind::fixed_lower;
    if (name == "fixed_upper") return BoundsKind::fixed_upper;
    if (name == "explicit") return BoundsKind::explicit_class;
    throw ConfigError("unknown bound family \"" + name + "\"");
}

}  // namespace

std::string_view to_string(BoundsKind kind) {
    switch (kind) {
        case BoundsKind::baseline: return "baseline";
        case BoundsKind::fixed_lower: return "fixed_lower";
        case BoundsKind::fixed_upper: return "fixed_upper";
        case BoundsKind::explicit_class: return "explicit";
    }
    return "unknown";
}

std::string_view to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::none: return "none";
        case SweepAxis::snr_db: return "snr_db";
        case SweepAxis::width: return "width";
        case SweepAxis::w_c: return "w_c";
    }
    return "unknown";
}

NoiseModel NoiseSpec::build(const OfdmParams& params) const {
    if (snr_db) return NoiseModel::from_snr_db(params, *snr_db);
    NoiseModel noise;
    if (radar_psd.size() == 1) {
        noise.radar_noise_psd.assign(params.n_subcarriers, radar_psd.front());
    } else {
        noise.radar_noise_psd = radar_psd;
    }
    noise.comm_noise_power = comm_noise_power;
    noise.validate(params);
    return noise;
}

UncertaintyClass BoundsSpec::build(const OfdmParams& params, double w) const {
    switch (kind) {
        case BoundsKind::baseline: return gaussian_bounds(params, {BoundFamily::baseline, 0.0});
        case BoundsKind::fixed_lower: return gaussian_bounds(params, {BoundFamily::fixed_lower, w});
        case BoundsKind::fixed_upper: return gaussian_bounds(params, {BoundFamily::fixed_upper, w});
        case BoundsKind::explicit_class: {
            if (!explicit_class) throw ConfigError("explicit bounds require all four vectors");
            explicit_class->validate();
            detail::require_same_size(explicit_class->size(), params.n_subcarriers, "explicit bounds");
            return *explicit_class;
        }
    }
    throw ConfigError("unknown bound family");
}

void Scenario::validate() const {
    try {
        ofdm.validate();
        (void)noise.build(ofdm);
        if (!(w_c >= 0.0 && w_c <= 1.0)) throw ConfigError("w_c must lie in [0, 1]");
        if (!(budget > 0.0) || !std::isfinite(budget)) throw ConfigError("budget must be positive");

        if (sweep.axis != SweepAxis::none) {
            if (sweep.values.empty()) throw ConfigError("sweep values must be nonempty");
            if (!std::is_sorted(sweep.values.begin(), sweep.values.end()))
                throw ConfigError("sweep values must be sorted ascending");
            for (double v : sweep.values) {
                if (!std::isfinite(v)) throw ConfigError("sweep values must be finite");
            }
            if (sweep.axis == SweepAxis::w_c &&
                (sweep.values.front() < 0.0 || sweep.values.back() > 1.0))
                throw ConfigError("w_c sweep values must lie in [0, 1]");
        }

        const UncertaintyClass cls = bounds.build(ofdm);
        if (specific_response && !cls.contains(*specific_response))
            throw ConfigError("specific_response lies outside the uncertainty class");
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

Scenario parse_scenario(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("scenario must be a JSON object");

    Scenario sc;
    try {
        if (root.contains("ofdm")) {
            const json& o = root.at("ofdm");
            sc.ofdm.n_subcarriers = count_at(o, "n_subcarriers");
            sc.ofdm.subcarrier_spacing = number_at(o, "subcarrier_spacing_hz");
            sc.ofdm.guard_interval = number_at(o, "guard_interval_s");
            sc.ofdm.n_symbols = count_at(o, "n_symbols");
            sc.ofdm.carrier_frequency = number_or(o, "carrier_frequency_hz", 0.0);
        }

        if (root.contains("noise")) {
            const json& n = root.at("noise");
            if (n.contains("snr_db") && n.contains("radar_psd"))
                throw ConfigError("noise: give either snr_db or radar_psd, not both");
            if (n.contains("snr_db")) {
                sc.noise.snr_db = number_at(n, "snr_db");
            } else {
                if (!n.contains("radar_psd")) throw ConfigError("noise: missing snr_db or radar_psd");
                sc.noise.radar_psd = vector_of(n.at("radar_psd"), "radar_psd");
                sc.noise.comm_noise_power = number_at(n, "comm_noise_power");
            }
        } else {
            sc.noise.snr_db = 5.0;
        }

        if (root.contains("bounds")) {
            const json& b = root.at("bounds");
            const auto family = b.find("family");
            if (family == b.end() || !family->is_string())
                throw ConfigError("bounds: missing string field \"family\"");
            sc.bounds.kind = parse_kind(family->get<std::string>());
            sc.bounds.width = number_or(b, "width", 0.0);
            if (sc.bounds.kind == BoundsKind::explicit_class) {
                sc.bounds.explicit_class =
                    UncertaintyClass{array_at(b, "radar_lower"), array_at(b, "radar_upper"),
                                     array_at(b, "comm_lower"), array_at(b, "comm_upper")};
            }
        }

        sc.w_c = number_or(root, "w_c", 0.5);
        sc.budget = number_or(root, "budget", 1.0);

        if (root.contains("specific_response")) {
            const json& s = root.at("specific_response");
            sc.specific_response = ResponsePoint{array_at(s, "radar"), array_at(s, "comm")};
        }

        if (root.contains("sweep")) {
            const json& s = root.at("sweep");
            if (!s.is_object() || s.size() != 1)
                throw ConfigError("sweep must name exactly one axis: snr_db, width or w_c");
            const std::string axis = s.begin().key();
            if (axis == "snr_db") {
                sc.sweep.axis = SweepAxis::snr_db;
            } else if (axis == "width") {
                sc.sweep.axis = SweepAxis::width;
            } else if (axis == "w_c") {
                sc.sweep.axis = SweepAxis::w_c;
            } else {
                throw ConfigError("unknown sweep axis \"" + axis + "\"");
            }
            sc.sweep.values = array_at(s, axis.c_str());
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed scenario: ") + e.what());
    }

    sc.validate();
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

}  // namespace ircw
