#include <wavebound/special.hpp>

#include <cmath>

namespace wavebound {

namespace {

// Power series for j_l, l in {0, 1}, adequate for |z| < 1.
Complex small_jn(int l, Complex z) {
  const Complex q = -0.5 * z * z;
  Complex term = 1.0, sum = 1.0;
  for (int k = 1; k < 30; ++k) {
    term *= q / (Real(k) * Real(2 * l + 2 * k + 1));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return l == 0 ? sum : sum * z / 3.0;
}

Complex closed_j0(Complex z) { return std::abs(z) < 1.0 ? small_jn(0, z) : std::sin(z) / z; }
Complex closed_j1(Complex z) {
  return std::abs(z) < 1.0 ? small_jn(1, z) : std::sin(z) / (z * z) - std::cos(z) / z;
}

}  // namespace

VectorXc spherical_jn(int l_max, Complex z) {
  if (l_max < 0) throw DomainError("spherical_jn: l_max must be non-negative");
  if (z == Complex(0.0)) {
    VectorXc unit = VectorXc::Zero(l_max + 1);
    unit(0) = 1.0;
    return unit;
  }
  const Real az = std::abs(z);
  const int start = l_max + 20 + static_cast<int>(std::ceil(az + 4.0 * std::cbrt(az + 1.0)));
  // Downward from a zero seed; values only matter up to a common factor.
  VectorXc seq = VectorXc::Zero(start + 2);
  seq(start) = 1e-300;
  const Real big = 1e250;
  for (int l = start; l >= 1; --l) {
    seq(l - 1) = Real(2 * l + 1) / z * seq(l) - seq(l + 1);
    if (std::abs(seq(l - 1)) > big) seq.segment(l - 1, start + 2 - (l - 1)) /= big;
  }
  // Normalize against whichever closed form is larger (better conditioned).
  const Complex j0 = closed_j0(z), j1 = closed_j1(z);
  const Complex factor = std::abs(j0) >= std::abs(j1) ? j0 / seq(0) : j1 / seq(1);
  VectorXc out = seq.head(l_max + 1) * factor;
  // The closed forms are more accurate near their own zeros.
  out(0) = j0;
  if (l_max >= 1) out(1) = j1;
  return out;
}

VectorXc spherical_hn1(int l_max, Complex z) {
  if (l_max < 0) throw DomainError("spherical_hn1: l_max must be non-negative");
  if (z == Complex(0.0)) throw PoleError("spherical_hn1: singular at z = 0");
  VectorXc out(l_max + 1);
  const Complex e = std::exp(kI * z);
  out(0) = -kI * e / z;
  if (l_max >= 1) out(1) = -e * (z + kI) / (z * z);
  for (int l = 1; l < l_max; ++l) out(l + 1) = Real(2 * l + 1) / z * out(l) - out(l - 1);
  return out;
}

VectorXc spherical_yn(int l_max, Complex z) {
  return (spherical_hn1(l_max, z) - spherical_jn(l_max, z)) / kI;
}

VectorXc spherical_derivative(const VectorXc& f, Complex z, int l_max) {
  if (f.size() < l_max + 2) throw DomainError("spherical_derivative: need orders up to l_max + 1");
  VectorXc out(l_max + 1);
  out(0) = -f(1);
  for (int l = 1; l <= l_max; ++l) {
    // The l/z form is exact; for |z| -> 0 use the symmetric recurrence to
    // avoid dividing by z.
    if (std::abs(z) > 1e-3)
      out(l) = f(l - 1) - Real(l + 1) / z * f(l);
    else
      out(l) = (Real(l) * f(l - 1) - Real(l + 1) * f(l + 1)) / Real(2 * l + 1);
  }
  return out;
}

VectorXr legendre_p(int l_max, Real x) {
  VectorXr p(l_max + 1);
  p(0) = 1.0;
  if (l_max >= 1) p(1) = x;
  for (int l = 1; l < l_max; ++l) p(l + 1) = (Real(2 * l + 1) * x * p(l) - Real(l) * p(l - 1)) / Real(l + 1);
  return p;
}

}  // namespace wavebound
