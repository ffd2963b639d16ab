#ifndef MVOP_ERRORS_HPP_
#define MVOP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace mvop {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter (or derived parameter) violates a validity constraint.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Exact division of a matrix polynomial left a remainder above tolerance.
class DivisionResidual : public Error {
 public:
  using Error::Error;
};

/// An iterative solve (quadrature nodes) did not converge.
class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

/// A hypergeometric bracket [C,U,V]_j that must be inverted is singular.
class SingularBracket : public Error {
 public:
  using Error::Error;
};

/// The raising-chain scale matrix is singular.
class SingularScale : public Error {
 public:
  using Error::Error;
};

/// Inputs too close together for a quotient formula (x ~ y).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// A 2x2 matrix that must be inverted is singular.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// A construction produced a result violating its postcondition
/// (e.g. a "monic" polynomial whose leading coefficient is not I).
class ConstructionFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace mvop

#endif  // MVOP_ERRORS_HPP_
