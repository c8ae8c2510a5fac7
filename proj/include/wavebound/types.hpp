#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wavebound {

using Real = double;
using Complex = std::complex<double>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorXc = VectorX<Complex>;
using MatrixXc = MatrixX<Complex>;
using VectorXr = VectorX<Real>;
using MatrixXr = MatrixX<Real>;
using Vector3r = Eigen::Vector3d;

inline constexpr Real kPi = 3.141592653589793238462643383279502884;
inline constexpr Complex kI{0.0, 1.0};

/// Relative tolerance scale used throughout: 1 + |value|.
template <typename T>
Real scale_of(const T& value) {
  return 1.0 + std::abs(value);
}

// Errors. Input/precondition problems derive from DomainError; failures of a
// numerical procedure or identity derive from NumericalError. The CLI maps the
// two families onto distinct exit codes.

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, std::string identity = {})
      : std::runtime_error(what), identity_(std::move(identity)) {}
  /// Name of the identity or relation whose evaluation failed, if any.
  const std::string& identity() const noexcept { return identity_; }

 private:
  std::string identity_;
};

/// A formula was evaluated at (or numerically on top of) one of its poles.
class PoleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A linear system or fractional-linear inverse is singular.
class SingularError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The input collapses a two-dimensional region to a real interval.
class DegenerateRegionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, std::vector<Real> history, std::string identity = {})
      : NumericalError(what, std::move(identity)), history_(std::move(history)) {}
  const std::vector<Real>& residual_history() const noexcept { return history_; }

 private:
  std::vector<Real> history_;
};

}  // namespace wavebound
