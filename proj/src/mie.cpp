#include <wavebound/mie.hpp>
#include <wavebound/quadrature.hpp>
#include <wavebound/special.hpp>

#include <algorithm>
#include <cmath>

namespace wavebound {

namespace {

Real cos_angle(const Vector3r& a, const Vector3r& b) {
  const Real na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw DomainError("direction must be nonzero");
  return std::clamp(a.dot(b) / (na * nb), -1.0, 1.0);
}

// Radial Gauss-Legendre rule on [0, a] fine enough for the interior fields.
QuadratureRule radial_rule(const PartialWaveSolution& sol) {
  const Real scale = std::max(sol.k0, std::abs(sol.k1)) * sol.radius;
  const int n = 48 + 2 * sol.l_max + static_cast<int>(std::ceil(4.0 * scale));
  return gauss_legendre(n, 0.0, sol.radius);
}

Real relative_gap(Real x, Real y) {
  const Real s = std::max(std::abs(x), std::abs(y));
  return s == 0.0 ? 0.0 : std::abs(x - y) / s;
}

}  // namespace

void AcousticMedia::validate(LossConvention loss) const {
  if (!(rho0 > 0.0) || !(kappa0 > 0.0) || !(omega > 0.0))
    throw DomainError("rho0, kappa0 and omega must be positive");
  if (std::abs(rho1) == 0.0 || std::abs(kappa1) == 0.0) throw DomainError("rho1 and kappa1 must be nonzero");
  if (loss.enforce && (rho1.imag() < 0.0 || kappa1.imag() > 0.0))
    throw DomainError("inclusion violates the loss convention (need Im rho1 >= 0, Im kappa1 <= 0)");
}

Real AcousticMedia::k0() const { return omega * std::sqrt(rho0 / kappa0); }

Complex AcousticMedia::k1() const {
  const Complex ratio = rho1 / kappa1;
  if (ratio.imag() == 0.0 && ratio.real() < 0.0)
    throw DomainError("rho1/kappa1 is a negative real: interior wavenumber branch is ambiguous");
  Complex k = omega * std::sqrt(ratio);
  if (k.imag() < 0.0) k = -k;
  return k;
}

int default_l_max(Real k0a) { return static_cast<int>(std::ceil(k0a + 8.0 * std::cbrt(k0a) + 12.0)); }

PartialWaveSolution solve_sphere(const AcousticMedia& media, const PlaneWave& wave, Real radius, LossConvention loss,
                                 int l_max) {
  media.validate(loss);
  if (!(radius > 0.0)) throw DomainError("sphere radius must be positive");
  if (wave.direction.norm() == 0.0) throw DomainError("incident direction must be nonzero");
  PartialWaveSolution sol;
  sol.media = media;
  sol.wave = wave;
  sol.wave.direction = wave.direction.normalized();
  sol.radius = radius;
  sol.k0 = media.k0();
  sol.k1 = media.k1();
  const Real x = sol.k0 * radius;
  if (x > 50.0) throw DomainError("k0 a above the supported range (50)");
  sol.l_max = l_max > 0 ? l_max : default_l_max(x);
  const int L = sol.l_max;
  const Complex y = sol.k1 * radius;

  const VectorXc jx = spherical_jn(L + 1, x);
  const VectorXc hx = spherical_hn1(L + 1, x);
  const VectorXc jy = spherical_jn(L + 1, y);
  const VectorXc djx = spherical_derivative(jx, x, L);
  const VectorXc dhx = spherical_derivative(hx, x, L);
  const VectorXc djy = spherical_derivative(jy, y, L);
  const Complex g0 = sol.k0 / media.rho0;
  const Complex g1 = sol.k1 / media.rho1;

  sol.A.resize(L + 1);
  sol.B.resize(L + 1);
  for (int l = 0; l <= L; ++l) {
    const Complex den = g0 * dhx(l) * jy(l) - g1 * hx(l) * djy(l);
    if (std::abs(den) == 0.0) throw SingularError("solve_sphere: singular transmission system", "sphere transmission");
    sol.A(l) = (g1 * jx(l) * djy(l) - g0 * djx(l) * jy(l)) / den;
    // Use whichever interface condition is better conditioned for B.
    if (std::abs(jy(l)) > 0.0 && std::abs(jy(l)) >= 1e-3 * std::abs(djy(l)))
      sol.B(l) = (jx(l) + sol.A(l) * hx(l)) / jy(l);
    else
      sol.B(l) = g0 * (djx(l) + sol.A(l) * dhx(l)) / (g1 * djy(l));
  }
  const Real peak = sol.A.cwiseAbs().maxCoeff();
  if (peak > 0.0 && std::abs(sol.A(L)) >= 1e-12 * peak)
    throw ConvergenceError("solve_sphere: partial-wave tail has not converged", {std::abs(sol.A(L)) / peak},
                           "partial-wave series");
  return sol;
}

Complex far_field(const PartialWaveSolution& sol, const Vector3r& direction) {
  const VectorXr p = legendre_p(sol.l_max, cos_angle(direction, sol.wave.direction));
  Complex sum = 0.0;
  for (int l = 0; l <= sol.l_max; ++l) sum += Real(2 * l + 1) * sol.A(l) * p(l);
  return -kI * sol.wave.amplitude / sol.k0 * sum;
}

PowerBudget power_budget(const PartialWaveSolution& sol) {
  const auto& m = sol.media;
  const Real p2 = std::norm(sol.wave.amplitude);
  const Real pref = 2.0 * kPi * p2 / (m.omega * m.rho0 * sol.k0);
  PowerBudget out;
  for (int l = 0; l <= sol.l_max; ++l) {
    out.scattered += pref * (2 * l + 1) * std::norm(sol.A(l));
    out.extinction -= pref * (2 * l + 1) * sol.A(l).real();
  }
  out.absorbed_modal = out.extinction - out.scattered;

  // 1/2 int [Im(-1/(omega rho1)) |grad P|^2 + Im(omega/kappa1) |P|^2] over the ball.
  const Real c_grad = (-1.0 / (m.omega * m.rho1)).imag();
  const Real c_pres = (m.omega / m.kappa1).imag();
  if (c_grad == 0.0 && c_pres == 0.0) return out;
  const QuadratureRule rule = radial_rule(sol);
  Real total = 0.0;
  for (Eigen::Index q = 0; q < rule.nodes.size(); ++q) {
    const Real r = rule.nodes(q);
    const Complex z = sol.k1 * r;
    const VectorXc j = spherical_jn(sol.l_max + 1, z);
    const VectorXc dj = spherical_derivative(j, z, sol.l_max);
    Real grad = 0.0, pres = 0.0;
    for (int l = 0; l <= sol.l_max; ++l) {
      const Real w = (2 * l + 1) * std::norm(sol.B(l));
      pres += w * std::norm(j(l)) * r * r;
      grad += w * (std::norm(sol.k1 * dj(l)) * r * r + l * (l + 1) * std::norm(j(l)));
    }
    total += rule.weights(q) * (c_grad * grad + c_pres * pres);
  }
  out.absorbed = 0.5 * 4.0 * kPi * p2 * total;
  return out;
}

BilinearCheck scattering_bilinear(const PartialWaveSolution& sol, const Vector3r& k_out) {
  const auto& m = sol.media;
  BilinearCheck out;
  out.far_field_route = 4.0 * kPi * far_field(sol, k_out) / (m.omega * m.rho0);

  const Complex c_grad = -(1.0 / (m.omega * m.rho1) - 1.0 / (m.omega * m.rho0));
  const Complex c_pres = m.omega / m.kappa1 - m.omega / m.kappa0;
  const VectorXr pl = legendre_p(sol.l_max, cos_angle(k_out, sol.wave.direction));
  const QuadratureRule rule = radial_rule(sol);
  VectorXc radial = VectorXc::Zero(sol.l_max + 1);
  for (Eigen::Index q = 0; q < rule.nodes.size(); ++q) {
    const Real r = rule.nodes(q);
    const Complex z1 = sol.k1 * r;
    const Real z0 = sol.k0 * r;
    const VectorXc j0 = spherical_jn(sol.l_max + 1, z0);
    const VectorXc j1 = spherical_jn(sol.l_max + 1, z1);
    const VectorXc dj0 = spherical_derivative(j0, z0, sol.l_max);
    const VectorXc dj1 = spherical_derivative(j1, z1, sol.l_max);
    for (int l = 0; l <= sol.l_max; ++l) {
      const Complex grad = sol.k0 * sol.k1 * dj0(l) * dj1(l) * r * r + Real(l * (l + 1)) * j0(l) * j1(l);
      radial(l) += rule.weights(q) * (c_grad * grad + c_pres * r * r * j0(l) * j1(l));
    }
  }
  Complex sum = 0.0;
  for (int l = 0; l <= sol.l_max; ++l) sum += Real(2 * l + 1) * sol.B(l) * pl(l) * radial(l);
  out.volume_route = 4.0 * kPi * sol.wave.amplitude * sum;
  const Real s = std::max(std::abs(out.far_field_route), std::abs(out.volume_route));
  out.relative_gap = s == 0.0 ? 0.0 : std::abs(out.far_field_route - out.volume_route) / s;
  return out;
}

OpticalTheoremCheck optical_theorem_residual(const PartialWaveSolution& sol) {
  const auto& m = sol.media;
  const PowerBudget budget = power_budget(sol);
  const Complex pbar = std::conj(sol.wave.amplitude);
  OpticalTheoremCheck out;
  out.w_budget = budget.absorbed + budget.scattered;
  out.w_forward = 2.0 * kPi * (pbar * far_field(sol, sol.wave.direction)).imag() / (m.omega * m.rho0);
  out.w_volume = 0.5 * (pbar * scattering_bilinear(sol, sol.wave.direction).volume_route).imag();
  out.residual = std::max({relative_gap(out.w_budget, out.w_forward), relative_gap(out.w_budget, out.w_volume),
                           relative_gap(out.w_forward, out.w_volume)});
  return out;
}

}  // namespace wavebound
