#pragma once

#include <stdexcept>
#include <string>

namespace coopdef {

/// Two agents share a position (r below kDegenerateRange); the LOS is undefined.
class DegenerateGeometry : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A state violates a precondition such as v > 0.
class InvalidState : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Fixed-time exponent premise a*k < 1 < b*k does not hold.
class ConditionViolated : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Integration produced a non-finite state.
class PropagationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace coopdef
