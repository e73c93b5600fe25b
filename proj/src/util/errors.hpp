#pragma once

#include <stdexcept>
#include <string>

namespace daogov {

// Error taxonomy; the C API maps each subclass to a status code.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error { using Error::Error; };         // malformed input file
struct IntegrityError : Error { using Error::Error; };     // dangling reference in a bundle
struct ValidationError : Error { using Error::Error; };    // value out of range / wrong sign
struct LookupError : Error { using Error::Error; };        // unknown entity id
struct ConfigError : Error { using Error::Error; };        // inconsistent run configuration
struct TransportError : Error { using Error::Error; };     // balance provider failure, retryable
struct PrerequisiteError : Error { using Error::Error; };  // stage ran before its inputs exist
struct IoError : Error { using Error::Error; };

// Raised by compute_power when a proposal uses a strategy outside the
// supported families; callers exclude the proposal instead of failing.
struct UnsupportedStrategyError : Error { using Error::Error; };

}  // namespace daogov
