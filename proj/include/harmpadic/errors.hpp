#pragma once

#include <stdexcept>
#include <string>

namespace harmpadic {

/// Input outside an operation's mathematical domain (non-prime modulus, p | n, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A configured capacity (Bernoulli cap, exact-mode bound) would be exceeded.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Division by a quantity only known to vanish modulo the working precision.
class PrecisionExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a result that needs a completeness certificate does not have one.
class NotCertified : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace harmpadic
