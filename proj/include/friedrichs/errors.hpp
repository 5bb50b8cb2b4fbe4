#pragma once

#include <stdexcept>
#include <string>

namespace friedrichs {

// Every numerical failure in the library derives from Error so callers can
// separate them from programming errors (std::logic_error and friends).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid model parameters, states or grids.
struct InvalidInput : Error {
  using Error::Error;
};

// Evaluation requested at a formfactor pole s^2 = -rho_k^2.
struct SingularPointError : Error {
  using Error::Error;
};

// |det G^{-1}| underflowed: the point sits on a pole of G.
struct SingularMatrixError : Error {
  using Error::Error;
};

// Quadrature or root iteration did not reach the requested tolerance.
struct ConvergenceError : Error {
  using Error::Error;
};

// Polynomial roots could not be paired into conjugates unambiguously.
struct ClassificationError : Error {
  using Error::Error;
};

// Zero of det G^{-1} is not simple.
struct SimplePoleError : Error {
  using Error::Error;
};

// Operation is ill-posed for this input (e.g. the sum rule at lambda = 0).
struct DegenerateInputError : Error {
  using Error::Error;
};

// deformed_integral asked to continue an integrand with no registered
// second-sheet continuation.
struct UnsupportedIntegrandError : Error {
  using Error::Error;
};

struct ZeroNormError : Error {
  using Error::Error;
};

}  // namespace friedrichs
