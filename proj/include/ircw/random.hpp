// SPDX-License-Identifier: Apache-2.0
//
// Deterministic sampling helpers. The engine and seed_seq are fully specified
// by the standard; the conversions to real variates are done here so output
// does not depend on a library's distribution implementations.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ircw {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Independent stream `index` derived from a base seed.
    Rng(std::uint64_t seed, std::uint64_t index) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(index),
                          static_cast<std::uint32_t>(index >> 32)};
        engine_.seed(seq);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Standard exponential.
    double exponential() { return -std::log1p(-uniform()); }

  private:
    std::mt19937_64 engine_;
};

}  // namespace ircw
