#pragma once

#include <stdexcept>
#include <string>

namespace cuspflow {

// Validation failures: bad inputs, violated preconditions. CLI maps these to exit 2.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Numerical guards: truncation/quadrature budgets, degeneracies. CLI maps these to exit 3.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularD : ValidationError {
    using ValidationError::ValidationError;
};
struct NonTermination : NumericalError {
    using NumericalError::NumericalError;
};
struct PoleAtOne : ValidationError {
    using ValidationError::ValidationError;
};
struct PoleHit : ValidationError {
    using ValidationError::ValidationError;
};
struct UnsupportedLattice : ValidationError {
    using ValidationError::ValidationError;
};
struct PoleInDenominator : ValidationError {
    using ValidationError::ValidationError;
};
struct DegenerateSupport : ValidationError {
    using ValidationError::ValidationError;
};
struct TruncationFailure : NumericalError {
    using NumericalError::NumericalError;
};
struct QuadratureBudgetExceeded : NumericalError {
    using NumericalError::NumericalError;
};
struct StepSizeUnderflow : NumericalError {
    using NumericalError::NumericalError;
};
struct InsufficientSupport : ValidationError {
    using ValidationError::ValidationError;
};
struct ProposalMismatch : NumericalError {
    using NumericalError::NumericalError;
};

} // namespace cuspflow
