#include <wavebound/oscillatory.hpp>
#include <wavebound/quadrature.hpp>

#include <cmath>

namespace wavebound {

Complex oscillatory_asymptotic(const std::function<Complex(Real)>& f, Real slope, Real offset, Real r) {
  if (slope == 0.0) throw DomainError("oscillatory_asymptotic: zero slope (stationary phase) is unsupported");
  const Complex hi = std::polar(1.0, r * (slope + offset)) * f(1.0) / (kI * slope);
  const Complex lo = std::polar(1.0, r * (-slope + offset)) * f(-1.0) / (kI * slope);
  return hi - lo;
}

Complex oscillatory_integral(const std::function<Complex(Real)>& f, Real slope, Real offset, Real r, Real abs_tol) {
  if (!(r > 0.0)) throw DomainError("oscillatory_integral: r must be positive");
  const int panels = 1 + static_cast<int>(std::ceil(2.0 * std::abs(slope) * r / kPi));
  auto integrand = [&](Real t) { return r * f(t) * std::polar(1.0, r * (slope * t + offset)); };
  Complex sum = 0.0;
  const Real h = 2.0 / panels;
  for (int k = 0; k < panels; ++k) {
    const Real a = -1.0 + k * h, b = (k + 1 == panels) ? 1.0 : a + h;
    sum += adaptive_gk15(integrand, a, b, abs_tol, 1e-12).value;
  }
  return sum;
}

}  // namespace wavebound
