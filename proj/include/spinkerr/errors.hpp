#pragma once

#include <stdexcept>
#include <string>

namespace spinkerr {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A value violates the documented domain of a parameter.
class InvalidParameter : public Error {
public:
    using Error::Error;
};

// The drive frequency omega_0 - delta_l is not positive.
class InvalidDetuning : public InvalidParameter {
public:
    using InvalidParameter::InvalidParameter;
};

// Steady state still carries population in the top Fock level at the maximum truncation.
class TruncationFailure : public Error {
public:
    using Error::Error;
};

// The trace-augmented Liouvillian could not be factorized, or its solution fails the residual check.
class DegenerateSystem : public Error {
public:
    using Error::Error;
};

// Closed-form transient amplitudes hit a vanishing denominator.
class DegenerateParameter : public Error {
public:
    using Error::Error;
};

// Fixed-step integration became unstable.
class StepSizeError : public Error {
public:
    using Error::Error;
};

// A normalized correlation or deviation is undefined (zero mean photon number or zero reference).
class UndefinedCorrelation : public Error {
public:
    using Error::Error;
};

}  // namespace spinkerr
