// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace ircw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitVerification = 3;

/// Parses arguments and runs one subcommand. Never calls std::exit.
int run(int argc, const char* const* argv);

}  // namespace ircw::cli
