#pragma once

#include <stdexcept>
#include <string>

namespace hermprod {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Violated precondition: bad ordering, dimension mismatch, evaluation at a pole.
struct DomainError : Error {
    using Error::Error;
};

// Integration line placed on the wrong side of a pole.
struct ContourError : Error {
    using Error::Error;
};

// Quadrature or series did not reach the requested tolerance.
struct ConvergenceError : Error {
    using Error::Error;
};

}  // namespace hermprod
