#pragma once

#include <stdexcept>
#include <string>

namespace garsia {

/// Base class for all errors thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or invalid input: unparsable polynomial text, non-monic or
/// reducible polynomial, no root in (1,2), bad configuration values.
struct ParseError : Error {
    using Error::Error;
};

/// A certified decision could not be reached within the configured
/// precision ceiling.
struct PrecisionError : Error {
    using Error::Error;
};

/// A vertex / class / iteration budget was exceeded. Carries the partial
/// statistics reached so that callers can report them.
struct BudgetError : Error {
    BudgetError(const std::string& msg, long reached_depth, std::size_t count)
        : Error(msg), depth(reached_depth), size(count) {}
    long depth = -1;
    std::size_t size = 0;
};

}  // namespace garsia
