#include <wavebound/backscatter.hpp>

#include <cmath>
#include <limits>

namespace wavebound {

namespace {

constexpr Real kInf = std::numeric_limits<Real>::infinity();

Real loss_term(Complex x1, Real x0) {
  const Real im = x1.imag(), dev = x1.real() - x0;
  if (im == 0.0) {
    if (dev == 0.0) return 0.0;
    return std::signbit(im) ? -kInf : kInf;
  }
  return im + dev * dev / im;
}

Real ball_volume(Real a) { return 4.0 * kPi * a * a * a / 3.0; }

}  // namespace

BallTrigIntegrals ball_trig_integrals(Real k0, Real a, Real psi) {
  const Real vol = ball_volume(a);
  const Real x = 2.0 * k0 * a;
  // int_ball cos(2 k0 khat . x) dx; series near 0 avoids cancellation.
  Real j;
  if (x < 1e-2)
    j = vol * (1.0 - x * x / 10.0 + x * x * x * x / 280.0);
  else
    j = 4.0 * kPi * (std::sin(x) - x * std::cos(x)) / (8.0 * k0 * k0 * k0);
  const Real c = std::cos(2.0 * psi);
  return {0.5 * vol - 0.5 * c * j, 0.5 * vol + 0.5 * c * j};
}

Real density_loss_term(Complex rho1, Real rho0) { return loss_term(rho1, rho0); }
Real modulus_loss_term(Complex kappa1, Real kappa0) { return loss_term(kappa1, kappa0); }

Real BackscatterBound::rhs_85(Real two_omega_t0) const {
  const Real vol = ball_volume(radius);
  const auto t = ball_trig_integrals(k0, radius, 0.5 * two_omega_t0 + arg_p);
  Real out = 0.0;
  if (density_term != 0.0) out += density_term * t.sin2 / vol;
  if (modulus_term != 0.0) out += modulus_term * t.cos2 / vol;
  return out;
}

Real BackscatterBound::lhs_85(Real two_omega_t0) const {
  return (std::polar(1.0, two_omega_t0 + arg_p) * amplitude).imag();
}

BackscatterBound backscatter_bound(const PartialWaveSolution& sol) {
  const auto& m = sol.media;
  if (m.rho1.imag() < 0.0 || m.kappa1.imag() > 0.0)
    throw DomainError("backscatter bound requires Im rho1 >= 0 and Im kappa1 <= 0");
  BackscatterBound out;
  out.k0 = sol.k0;
  out.radius = sol.radius;
  const Complex p = sol.wave.amplitude;
  if (std::abs(p) == 0.0) throw DomainError("backscatter bound: incident amplitude is zero");
  out.arg_p = std::arg(p);
  out.density_term = density_loss_term(m.rho1, m.rho0) / m.rho0;
  out.modulus_term = -modulus_loss_term(m.kappa1, m.kappa0) / m.kappa0;
  out.rhs_86 = out.density_term + out.modulus_term;
  const Real vol = ball_volume(sol.radius);
  out.amplitude = 4.0 * kPi * far_field(sol, -sol.wave.direction) / (std::abs(p) * sol.k0 * sol.k0 * vol);
  out.lhs = std::abs(out.amplitude);
  out.margin = out.rhs_86 - out.lhs;
  return out;
}

WrapRegion half_plane_polygon(const std::vector<Real>& angles, const std::vector<Real>& offsets, Complex value) {
  if (angles.size() != offsets.size() || angles.size() < 4)
    throw DomainError("wrap region: need at least four half-planes");
  WrapRegion out;
  out.angles = angles;
  out.offsets = offsets;
  out.value = value;
  out.margin = kInf;
  bool all_finite = true;
  for (std::size_t j = 0; j < angles.size(); ++j) {
    if (std::isinf(offsets[j])) {
      all_finite = false;
      continue;
    }
    out.margin = std::min(out.margin, offsets[j] - (std::polar(1.0, angles[j]) * value).imag());
  }
  if (!all_finite) return out;
  // Consecutive boundary lines meet at the polygon's vertices.
  const std::size_t n = angles.size();
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t k = (j + 1) % n;
    const Complex u = std::polar(1.0, angles[j]), v = std::polar(1.0, angles[k]);
    // Im(u z) = u.im x + u.re y.
    Eigen::Matrix2d a;
    a << u.imag(), u.real(), v.imag(), v.real();
    const Eigen::Vector2d xy = a.partialPivLu().solve(Eigen::Vector2d(offsets[j], offsets[k]));
    out.vertices.emplace_back(xy(0), xy(1));
  }
  for (const Complex& z : out.vertices)
    for (std::size_t j = 0; j < n; ++j) {
      const Real slack = offsets[j] - (std::polar(1.0, angles[j]) * z).imag();
      if (slack < -1e-9 * (1.0 + std::abs(z)))
        throw NumericalError("wrap region: half-plane intersection is empty or not convex-ordered",
                             "backscatter wrap-around bounds");
    }
  out.bounded = true;
  return out;
}

WrapRegion wrap_around_region(const PartialWaveSolution& sol, int n_angles) {
  if (n_angles < 4) throw DomainError("wrap region: n_angles must be at least 4");
  const BackscatterBound b = backscatter_bound(sol);
  std::vector<Real> angles, offsets;
  for (int j = 0; j < n_angles; ++j) {
    const Real t = 2.0 * kPi * j / n_angles;
    angles.push_back(t + b.arg_p);
    offsets.push_back(b.rhs_85(t));
  }
  return half_plane_polygon(angles, offsets, b.amplitude);
}

}  // namespace wavebound
