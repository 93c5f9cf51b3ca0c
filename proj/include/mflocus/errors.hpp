#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mflocus {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Text could not be parsed; `position` is a 0-based byte offset into the input.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg + " (at position " + std::to_string(position) + ")"), position(position) {}
    std::size_t position;
};

// Operands do not share an ambient variable context / model.
struct ContextMismatchError : Error {
    using Error::Error;
};

// A constructed object violates its defining relations (e.g. phi0*phi1 != V*Id).
struct ValidationError : Error {
    using Error::Error;
};

// A documented precondition of an operation does not hold.
struct PreconditionError : Error {
    using Error::Error;
};

// A Groebner computation exceeded its reduction-step budget.
struct BudgetExhaustedError : Error {
    using Error::Error;
};

} // namespace mflocus
