#pragma once

#include <stdexcept>
#include <string>

namespace ecff {

/// Root of every error the library raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Characteristic <= 3, non-prime characteristic, or a field too large for 64-bit loops.
class UnsupportedField : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public Error {
public:
    using Error::Error;
};

class NotASquare : public Error {
public:
    using Error::Error;
};

class SingularCurve : public Error {
public:
    using Error::Error;
};

/// An enumeration would exceed its configured budget; raised before any work starts.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// A computed object broke one of its stated invariants.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

/// A Frobenius class query with a repeated eigenvalue but no scalar flag.
class AmbiguousClass : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

} // namespace ecff
