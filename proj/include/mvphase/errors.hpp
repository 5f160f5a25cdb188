#pragma once

#include <stdexcept>
#include <string>

namespace mvphase {

/// Base class for runtime numerical failures (quadrature, root finding, simulation).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive quadrature exhausted its subdivision budget above the requested tolerance.
class QuadratureToleranceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Root bracket does not enclose a sign change (or lo >= hi).
class BracketError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Self-consistency scan produced a root count outside {1, 3}.
class RootCountError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// A particle state left the admissible range (timestep too large).
class BlowUpError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// The two closed forms of the small-sigma_m gradient disagree beyond tolerance.
class GradientFormMismatch : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace mvphase
