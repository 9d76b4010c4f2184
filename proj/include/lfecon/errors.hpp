#pragma once

#include <stdexcept>
#include <string>

namespace lfecon {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad configuration: unknown ids, malformed config files, invalid options.
struct ConfigError : Error {
    using Error::Error;
};

/// Bad input data: malformed CSV, series invariant violations, empty overlaps.
struct DataError : Error {
    using Error::Error;
};

/// Numeric failure: rank deficiency, singular moment matrices, degenerate variance.
struct NumericError : Error {
    using Error::Error;
};

}  // namespace lfecon
