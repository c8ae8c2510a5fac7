#pragma once

#include <wavebound/bounds.hpp>
#include <wavebound/types.hpp>

namespace wavebound {

/// Fluid matrix (rho0, kappa0 real) and penetrable inclusion (rho1, kappa1
/// complex) at angular frequency omega; time dependence e^{-i omega t}.
struct AcousticMedia {
  Real rho0 = 1.0;
  Real kappa0 = 1.0;
  Complex rho1{1.0};
  Complex kappa1{1.0};
  Real omega = 1.0;

  /// Im rho1 >= 0 and Im kappa1 <= 0 when `loss.enforce`.
  void validate(LossConvention loss = {}) const;
  Real k0() const;
  /// omega sqrt(rho1 / kappa1) on the branch Im k1 >= 0; DomainError when
  /// rho1/kappa1 is a negative real (both branches equally valid).
  Complex k1() const;
};

struct PlaneWave {
  Complex amplitude{1.0};
  Vector3r direction = Vector3r::UnitZ();
};

struct PartialWaveSolution {
  AcousticMedia media;
  PlaneWave wave;
  Real radius = 1.0;
  int l_max = 0;
  Real k0 = 0;
  Complex k1{0.0};
  VectorXc A;  // exterior: j_l + A_l h_l
  VectorXc B;  // interior: B_l j_l(k1 r)
};

/// l_max = ceil(k0 a + 8 (k0 a)^{1/3} + 12).
int default_l_max(Real k0a);

/// Transmission problem for a sphere centred at the origin. Pressure and
/// normal velocity (1/(rho omega)) dP/dr are continuous at r = a. Throws
/// ConvergenceError when the coefficient tail has not decayed below 1e-12 of
/// its maximum.
PartialWaveSolution solve_sphere(const AcousticMedia& media, const PlaneWave& wave, Real radius,
                                 LossConvention loss = {}, int l_max = 0);

/// P_inf(n) in P^s ~ e^{i k0 r} / r * P_inf; units pressure * length.
Complex far_field(const PartialWaveSolution& sol, const Vector3r& direction);

struct PowerBudget {
  Real absorbed = 0;         // interior volume integral
  Real absorbed_modal = 0;   // extinction minus scattered, from the modal sums
  Real scattered = 0;
  Real extinction = 0;       // modal
};

PowerBudget power_budget(const PartialWaveSolution& sol);

struct OpticalTheoremCheck {
  Real w_budget = 0;   // absorbed (volume) + scattered
  Real w_forward = 0;  // 2 pi Im[conj(p) P_inf(k0_hat)] / (omega rho0)
  Real w_volume = 0;   // Im[conj(p) I1_volume(k0_hat)] / 2
  Real residual = 0;   // largest pairwise relative gap; 0 when W = 0
};

OpticalTheoremCheck optical_theorem_residual(const PartialWaveSolution& sol);

struct BilinearCheck {
  Complex far_field_route{0.0};  // 4 pi P_inf(k_out) / (omega rho0)
  Complex volume_route{0.0};     // interior volume integral against the probe wave
  Real relative_gap = 0;
};

/// Scattering bilinear form against the probe wave exp(-i k0 k_out . x).
BilinearCheck scattering_bilinear(const PartialWaveSolution& sol, const Vector3r& k_out);

}  // namespace wavebound
