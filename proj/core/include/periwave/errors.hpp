#pragma once

#include <stdexcept>
#include <string>

namespace periwave {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid configuration or precondition violation detected before compute.
struct ConfigError : Error {
    using Error::Error;
};

/// A solver or iteration failed to reach its tolerance.
struct ConvergenceError : Error {
    using Error::Error;
};

/// NaN/Inf detected while integrating; carries the Runge-Kutta step index.
struct BlowUpError : Error {
    BlowUpError(const std::string& msg, long step_index_)
        : Error(msg), step_index(step_index_) {}
    long step_index;
};

/// Numerical failure outside time integration (singular system, bad kernel entry, ...).
struct NumericError : Error {
    using Error::Error;
};

} // namespace periwave
