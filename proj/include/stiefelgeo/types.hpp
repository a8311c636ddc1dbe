#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace stiefelgeo {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntVector = Eigen::VectorXi;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes that do not fit together (non-square, mismatched blocks, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Parameter range for which no bound is known (e.g. curvature for beta > 1).
class UnsupportedRegime : public Error {
 public:
  using Error::Error;
};

/// Two tangent vectors that do not span a plane.
class DegenerateSection : public Error {
 public:
  using Error::Error;
};

/// Input to a loop analysis that does not close.
class NotALoop : public Error {
 public:
  using Error::Error;
};

/// Malformed matrix or tangent text input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Metric parameter of the beta-metric family; always strictly positive.
class Beta {
 public:
  explicit Beta(double value) : value_(value) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw DomainError("beta must be a finite positive number, got " + std::to_string(value));
    }
  }
  [[nodiscard]] double value() const noexcept { return value_; }

 private:
  double value_;
};

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace stiefelgeo
