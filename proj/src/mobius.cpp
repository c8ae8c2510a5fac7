#include <wavebound/mobius.hpp>

namespace wavebound {

Complex cross_ratio(Complex z1, Complex z2, Complex z3, Complex z4) {
  return ((z1 - z3) * (z2 - z4)) / ((z1 - z4) * (z2 - z3));
}

GeneralizedCircle<Real> circle_through(Complex z1, Complex z2, Complex z3) {
  GeneralizedCircle<Real> out;
  // Circumcenter from the perpendicular-bisector equations.
  const Complex w = (z3 - z1) / (z2 - z1);
  const Real s = std::imag(w);
  const Real span = std::abs(z2 - z1) + std::abs(z3 - z1);
  if (std::abs(s) * std::abs(z2 - z1) <= 1e-14 * span) {
    out.is_line = true;
    out.anchor = z1;
    out.direction = (z2 - z1) / std::abs(z2 - z1);
    return out;
  }
  const Complex c = (z2 - z1) * (w - std::norm(w)) / (Complex(0, 2) * s) + z1;
  out.center = c;
  out.radius = std::abs(z1 - c);
  return out;
}

}  // namespace wavebound
