#pragma once

#include <stdexcept>
#include <string>

namespace itosym {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation outside the declared domain of a function or equation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Noise coefficients are functionally dependent (or vanish) where independence is required.
class DegenerateNoises : public Error {
public:
    using Error::Error;
};

/// The noise selected for a standard-form reduction vanishes somewhere in the domain.
class SingularNoise : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature failed to reach the requested tolerance.
class QuadratureFailure : public Error {
public:
    using Error::Error;
};

/// Time grid is not strictly increasing from zero.
class BadGrid : public Error {
public:
    using Error::Error;
};

/// Coarsening factor does not divide the number of steps.
class BadFactor : public Error {
public:
    using Error::Error;
};

/// Trajectories cannot be compared (incomplete or mismatched grids).
class IncomparableTrajectories : public Error {
public:
    using Error::Error;
};

/// Three-noise probe parameters make the constructed noises proportional.
class DegenerateProbe : public Error {
public:
    using Error::Error;
};

/// Malformed JSON input or unknown fields.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Constructor argument violates a structural constraint (zero coefficient, bad exponent, ...).
class InvalidParameter : public Error {
public:
    using Error::Error;
};

} // namespace itosym
