#pragma once

#include <stdexcept>
#include <string>

namespace clens {

/// Raised when caller-supplied data violates a precondition (shape, finiteness, range).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical routine cannot deliver a result (non-convergence, too few admissible eigenpairs).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace clens
