// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace ineqcert {

// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Paired vectors have different lengths.
struct DimensionError : Error {
    using Error::Error;
};

// Arithmetic precondition violated (zero denominator, 0^-n, nonpositive
// argument where a positive one is required, ...).
struct DomainError : Error {
    using Error::Error;
};

// Exact mode was requested on inputs that are not exactly representable
// (non power-closed entries under a fractional exponent). Callers should
// switch to enclosure mode.
struct RepresentabilityError : Error {
    using Error::Error;
};

// A decision loop reached the precision cap but the context required a
// decision (e.g. a certificate step that may not be UNDECIDED).
struct PrecisionCapError : Error {
    using Error::Error;
};

// Consistency violation that signals a bug, not bad input
// (e.g. a refinement that does not nest).
struct InternalError : Error {
    using Error::Error;
};

// Invalid user-supplied values (weight sums, all-zero weights, ...).
struct InputError : Error {
    using Error::Error;
};

// Malformed instance or certificate text. Carries a 1-based position.
struct ParseError : Error {
    ParseError(int line_, int col_, const std::string& what_)
        : Error("parse error at " + std::to_string(line_) + ":" +
                std::to_string(col_) + ": " + what_),
          line(line_),
          col(col_) {}
    int line;
    int col;
};

}  // namespace ineqcert
