// errors.hpp — Exception hierarchy shared by all ramsey modules.
//
// Two families: ValidationError (bad input, caller's fault) and
// NumericalError (a computation could not meet its tolerance). The CLI maps
// them to exit codes 1 and 2.

#pragma once

#include <stdexcept>
#include <string>

namespace ramsey {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

// Validation family
class DomainError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DegeneratePattern : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Numerical family
class TailTooLarge : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class TruncationLeak : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NoRootFound : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class StepUnderflow : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ConvergenceFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class Inconclusive : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace ramsey
