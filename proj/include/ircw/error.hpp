// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace ircw {

/// Vector lengths disagree, or a vector that must be nonempty is empty.
class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A value lies outside the domain an operation is defined on.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// The operation's stated precondition does not hold for these inputs.
class PreconditionError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// An iterative solver failed to meet its tolerance.
class SolverError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A scenario file or CLI option is malformed or inconsistent.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require_same_size(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw DimensionError(std::string(what) + ": length " + std::to_string(a) +
                             " does not match " + std::to_string(b));
    }
}

}  // namespace detail

}  // namespace ircw
