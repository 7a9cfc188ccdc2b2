#pragma once

#include <stdexcept>
#include <string>

namespace exact {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input violating an operation's precondition (arity mismatch, index out
// of range, ill-defined composition, wrong ODE regime, point outside D).
class RejectedInput : public Error {
public:
    using Error::Error;
};

// Series with zero constant term passed where a unit is required.
class NonUnitError : public RejectedInput {
public:
    using RejectedInput::RejectedInput;
};

class DivisionByZero : public Error {
public:
    using Error::Error;
};

// A lazily presented value could not be decided within the order bound.
class Indeterminate : public Error {
public:
    using Error::Error;
};

// Box or disc membership could not be decided within the order bound.
class IndeterminateMembership : public Indeterminate {
public:
    using Indeterminate::Indeterminate;
};

// A(0) = B(0) = 0, or a vanishing recurrence pivot.
class SingularEquation : public Error {
public:
    using Error::Error;
};

class PreconditionViolation : public Error {
public:
    using Error::Error;
};

} // namespace exact
