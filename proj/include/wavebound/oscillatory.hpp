#pragma once

#include <wavebound/types.hpp>

#include <functional>

namespace wavebound {

/// Leading endpoint asymptotics of I2(r) = int_{-1}^{1} r f(t) exp(i r g(t)) dt
/// for linear g(t) = slope t + offset:
/// e^{i r g(1)} f(1) / (i g'(1)) - e^{i r g(-1)} f(-1) / (i g'(-1)).
Complex oscillatory_asymptotic(const std::function<Complex(Real)>& f, Real slope, Real offset, Real r);

/// I2(r) by adaptive Gauss-Kronrod on panels spanning at most half a period.
Complex oscillatory_integral(const std::function<Complex(Real)>& f, Real slope, Real offset, Real r,
                             Real abs_tol = 1e-13);

}  // namespace wavebound
