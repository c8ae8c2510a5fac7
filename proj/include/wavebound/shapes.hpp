#pragma once

#include <wavebound/types.hpp>

namespace wavebound {

// Closed-form quasistatic polarizabilities of canonical inclusions in a host of
// unit permittivity. Scalar values are Tr(alpha)/(d|Omega|).

enum class ShapeKind { sphere_or_disk, ellipse_or_ellipsoid, coated_sphere_or_shell };

struct InclusionShape {
  ShapeKind kind = ShapeKind::sphere_or_disk;
  int dim = 3;
  VectorXr depolarization_factors;  // ellipse/ellipsoid only
  Real core_fraction = 0;           // coated only: core volume / outer volume

  void validate() const;
};

/// d chi / (chi + d).
Complex ball_polarizability(Complex chi1, int dim);

/// Diagonal entries chi / (1 + L_i chi) of alpha/|Omega| in the principal axes.
/// A resonant entry throws PoleError naming the offending index.
VectorXc ellipsoid_polarizability(Complex chi1, const VectorXr& factors);

/// Ball or disk of unit-permittivity core (volume fraction `core_fraction` of
/// the outer ball) coated by the inclusion material; normalized by the volume
/// of the coating only.
Complex coated_polarizability(Complex chi1, int dim, Real core_fraction);

/// chi - chi^2 / (d (1 + chi)): the vanishing-thickness limit of the coating.
Complex thin_shell_polarizability(Complex chi1, int dim);

/// Tr(alpha)/(d|Omega|) for any supported shape.
Complex shape_polarizability(const InclusionShape& shape, Complex chi1);

}  // namespace wavebound
