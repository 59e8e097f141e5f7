#pragma once

#include <stdexcept>
#include <string>

namespace primesum {

// Precondition on an argument's value does not hold.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Exact integer arithmetic would exceed 64 bits.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

// Result cannot be represented (e.g. a series too large even in log space).
class RangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

// Enumeration guard exceeded.
class SizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

// Experiment configuration is infeasible or malformed.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An unconditionally true identity or inequality failed to hold.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace primesum
