#pragma once

#include <wavebound/mie.hpp>

#include <vector>

namespace wavebound {

/// Integrals of sin^2 and cos^2 of (k0 khat . x + psi) over a ball of radius a.
struct BallTrigIntegrals {
  Real sin2 = 0;
  Real cos2 = 0;
};

/// Closed form: |Omega|/2 -/+ cos(2 psi) J / 2 with
/// J = 4 pi (sin 2k0a - 2k0a cos 2k0a) / (2k0)^3.
BallTrigIntegrals ball_trig_integrals(Real k0, Real radius, Real psi);

/// Loss terms x'' + (x' - x0)^2 / x'' with the matched limit: 0 when x'' = 0
/// and x' = x0, +inf (or -inf, following the sign of x'' = 0^-) otherwise.
Real density_loss_term(Complex rho1, Real rho0);
Real modulus_loss_term(Complex kappa1, Real kappa0);

/// Bounds on the backscattering amplitude, in the normalized variable
/// z = 4 pi P_inf(-khat) / (|p| k0^2 |Omega|).
struct BackscatterBound {
  Real rhs_86 = 0;     // shape-independent bound on |z|
  Real lhs = 0;        // |z|
  Real margin = 0;     // rhs_86 - lhs
  Complex amplitude{0.0};  // z
  Real density_term = 0;   // [rho'' + (rho' - rho0)^2 / rho''] / rho0
  Real modulus_term = 0;   // -[kappa'' + (kappa' - kappa0)^2 / kappa''] / kappa0
  Real k0 = 0;
  Real radius = 0;
  Real arg_p = 0;

  /// Right side of the t0-dependent bound as a function of 2 omega t0,
  /// normalized like `amplitude`.
  Real rhs_85(Real two_omega_t0) const;
  /// Im(exp(i (2 omega t0 + arg p)) z): the quantity rhs_85 bounds.
  Real lhs_85(Real two_omega_t0) const;
};

BackscatterBound backscatter_bound(const PartialWaveSolution& sol);

/// Intersection of half-planes Im(exp(i theta_j) z) <= b_j.
struct WrapRegion {
  std::vector<Real> angles;   // theta_j = 2 omega t0_j + arg p
  std::vector<Real> offsets;  // b_j (may be +inf: vacuous)
  std::vector<Complex> vertices;  // polygon, empty when unbounded
  Complex value{0.0};
  Real margin = 0;  // min_j (b_j - Im(exp(i theta_j) value)); > 0 means strictly interior
  bool bounded = false;
};

/// Polygon from explicit half-planes; throws NumericalError when the
/// intersection is empty.
WrapRegion half_plane_polygon(const std::vector<Real>& angles, const std::vector<Real>& offsets, Complex value);

/// n_angles equally spaced values of 2 omega t0 in [0, 2 pi).
WrapRegion wrap_around_region(const PartialWaveSolution& sol, int n_angles);

}  // namespace wavebound
