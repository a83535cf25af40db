#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hrod {

/// Base class of every error thrown by the solver library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two states (or a state and a grid) do not share the same GridSpec.
class GridMismatch : public Error {
 public:
  GridMismatch() : Error("grid mismatch between Lagrangian states") {}
};

/// y = xi + zeta decreases between storage positions index-1 and index.
class NonMonotoneY : public Error {
 public:
  explicit NonMonotoneY(std::size_t index)
      : Error("y is not nondecreasing at storage index " + std::to_string(index)),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// The implicit midpoint fixed-point iteration did not contract; the time
/// step is too large for the magnitude of the state.
class FixedPointDiverged : public Error {
 public:
  FixedPointDiverged(int iterations, double residual)
      : Error("fixed-point iteration failed after " + std::to_string(iterations) +
              " iterations (residual " + std::to_string(residual) + ")"),
        iterations_(iterations),
        residual_(residual) {}
  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

class StepSizeUnderflow : public Error {
 public:
  StepSizeUnderflow(double t, double h)
      : Error("adaptive step size underflow at t=" + std::to_string(t) +
              " (h=" + std::to_string(h) + ")"),
        t_(t),
        h_(h) {}
  double time() const noexcept { return t_; }
  double step() const noexcept { return h_; }

 private:
  double t_;
  double h_;
};

class RootBracketFailure : public Error {
 public:
  using Error::Error;
};

class ProfileBlowup : public Error {
 public:
  using Error::Error;
};

class NonMonotoneConstruction : public Error {
 public:
  NonMonotoneConstruction(double xi, double y_xi)
      : Error("cuspon construction has y_xi=" + std::to_string(y_xi) + " < 0 at xi=" +
              std::to_string(xi) + "; adjust the blend interval"),
        xi_(xi) {}
  double xi() const noexcept { return xi_; }

 private:
  double xi_;
};

class DegenerateFit : public Error {
 public:
  using Error::Error;
};

}  // namespace hrod
