#pragma once

#include <stdexcept>
#include <string>

namespace homog {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Time step too coarse for the fastest oscillation of the scaled potential.
class UnderresolvedGrid : public Error {
 public:
  using Error::Error;
};

/// Operation called for a scaling regime it does not support.
class WrongRegime : public Error {
 public:
  using Error::Error;
};

class CholeskyFailure : public Error {
 public:
  using Error::Error;
};

/// Field and local-time (or path) grids are not compatible.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

class MollifierTooNarrow : public Error {
 public:
  using Error::Error;
};

/// Dyadic level finer than the field's time grid.
class LevelTooFine : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature did not reach its tolerance; usually a malformed kernel.
class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace homog
