#pragma once

#include <wavebound/types.hpp>

#include <functional>

namespace wavebound {

struct QuadratureRule {
  VectorXr nodes;
  VectorXr weights;
};

/// n-point Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(int n, Real a = -1.0, Real b = 1.0);

struct AdaptiveResult {
  Complex value;
  Real error_estimate = 0;
  int evaluations = 0;
};

/// Adaptive Gauss-Kronrod (7/15) quadrature of a complex integrand on [a, b],
/// bisecting until each panel meets abs_tol + rel_tol * |panel| or the depth
/// limit is reached (then ConvergenceError).
AdaptiveResult adaptive_gk15(const std::function<Complex(Real)>& f, Real a, Real b, Real abs_tol, Real rel_tol,
                             int max_depth = 40);

}  // namespace wavebound
