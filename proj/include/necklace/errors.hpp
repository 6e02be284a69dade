#pragma once

#include <stdexcept>
#include <string>

namespace necklace {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The adaptive integrator could not make progress.
class IntegrationError : public Error {
 public:
  using Error::Error;
};

/// A root or shooting parameter was not bracketed by a sign change.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// An iteration stopped before reaching its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// The band scan grid is too coarse to separate neighbouring edges.
class GridError : public Error {
 public:
  using Error::Error;
};

/// The linearization at the origin is not hyperbolic.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// The unstable manifold never crossed the symmetry curve.
class NoCrossingError : public Error {
 public:
  using Error::Error;
};

/// A shooting trajectory neither diverged nor decayed within its cell budget.
class UndecidableError : public Error {
 public:
  using Error::Error;
};

/// An assembled profile violates the vertex conditions.
class AssemblyError : public Error {
 public:
  using Error::Error;
};

}  // namespace necklace
