#pragma once

#include <wavebound/types.hpp>

namespace wavebound {

/// Spherical Bessel j_l(z), l = 0..l_max, for complex z (Miller's downward
/// recurrence normalized by the closed form of j_0 or j_1).
VectorXc spherical_jn(int l_max, Complex z);

/// Spherical Hankel h_l^(1)(z) = j_l + i y_l by upward recurrence. Intended for
/// real or weakly complex arguments (outgoing exterior fields).
VectorXc spherical_hn1(int l_max, Complex z);

/// y_l(z) = (h_l - j_l) / i.
VectorXc spherical_yn(int l_max, Complex z);

/// Derivatives from f_l' = f_{l-1} - (l+1) f_l / z, f_0' = -f_1. `values`
/// must hold orders 0..l_max+1.
VectorXc spherical_derivative(const VectorXc& values, Complex z, int l_max);

/// Legendre polynomials P_0..P_l_max at x.
VectorXr legendre_p(int l_max, Real x);

}  // namespace wavebound
