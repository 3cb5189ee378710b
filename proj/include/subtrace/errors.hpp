#pragma once

#include <stdexcept>
#include <string>

namespace subtrace {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A supplied modulus polynomial is not irreducible.
struct ReducibleModulus : Error {
    using Error::Error;
};

// Field degree k outside 1..16, or a modulus of the wrong degree / not monic.
struct UnsupportedDegree : Error {
    using Error::Error;
};

// Inversion of zero, or polynomial division by the zero polynomial.
struct DivisionByZero : Error {
    using Error::Error;
};

// Operands belong to different fields (or different extension parameters).
struct ParamsMismatch : Error {
    using Error::Error;
};

// Operation needs a higher degree than the argument has (e.g. subtrace at n < 2).
struct DegreeTooSmall : Error {
    using Error::Error;
};

// rel_trace target degree does not divide the extension degree.
struct NotADivisor : Error {
    using Error::Error;
};

// A sweep or enumeration exceeds the configured budget.
struct BudgetExceeded : Error {
    using Error::Error;
};

// A documented precondition was violated (e.g. epsilon_of_basis at n % 4 != 2).
struct PreconditionViolated : Error {
    using Error::Error;
};

// A division that must be exact left a remainder; signals an implementation bug.
struct InexactDivision : Error {
    using Error::Error;
};

// A count that must be nonnegative came out negative; signals an implementation bug.
struct NegativeCount : Error {
    using Error::Error;
};

}  // namespace subtrace
