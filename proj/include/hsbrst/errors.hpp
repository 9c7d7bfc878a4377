#pragma once

#include <stdexcept>
#include <string>

namespace hsbrst {

/// Base class for all engine errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad alphabet, table, or option wiring.
struct ConfigError : Error {
    using Error::Error;
};

/// Grading preconditions violated (inhomogeneous input, mismatched shifts).
struct GradingError : Error {
    using Error::Error;
};

/// Formal derivative nesting exceeded the configured bound.
struct DepthError : Error {
    using Error::Error;
};

/// A derivation was applied to a generator it has no rule for.
struct UndefinedActionError : Error {
    using Error::Error;
};

/// DSL or table text could not be parsed; carries a byte offset.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg + " (at offset " + std::to_string(position) + ")"), offset(position) {}
    std::size_t offset;
};

/// CLI usage problems (unknown flags, bad combinations).
struct UsageError : Error {
    using Error::Error;
};

} // namespace hsbrst
