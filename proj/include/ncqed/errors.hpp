// errors.hpp: exception hierarchy shared by all ncqed modules

#pragma once

#include <stdexcept>
#include <string>

namespace ncqed {

// Bad user input: malformed scenario, violated parameter invariant, etc.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InvalidTruncation : public InputError {
public:
    using InputError::InputError;
};

class DimensionMismatch : public InputError {
public:
    using InputError::InputError;
};

// A numerical run that violated a physics diagnostic (trace drift, truncation, ...).
class PhysicsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Adaptive step size collapsed below the representable scale.
class StiffnessError : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
};

}  // namespace ncqed
