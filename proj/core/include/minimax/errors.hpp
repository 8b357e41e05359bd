#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace minimax {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed arguments: dimension mismatch, out-of-range scalars, infeasible anchors.
class InvalidInputError : public Error {
public:
    using Error::Error;
};

/// Non-finite values or divergence during an iteration.
class NumericError : public Error {
public:
    explicit NumericError(const std::string &what,
                          std::optional<std::size_t> iteration = std::nullopt)
        : Error(iteration ? what + " (iteration " + std::to_string(*iteration) + ")" : what),
          iteration_(iteration) {}

    std::optional<std::size_t> iteration() const noexcept { return iteration_; }

    /// Same error with "prefix: " prepended to the message.
    NumericError with_context(const std::string &prefix) const {
        NumericError e(prefix + ": " + what());
        e.iteration_ = iteration_;
        return e;
    }

private:
    std::optional<std::size_t> iteration_;
};

/// Solver parameters inconsistent with the problem (e.g. a Frank-Wolfe constant too small).
class ConfigurationError : public Error {
public:
    using Error::Error;
};

} // namespace minimax
