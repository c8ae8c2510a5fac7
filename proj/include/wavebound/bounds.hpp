#pragma once

#include <wavebound/mobius.hpp>
#include <wavebound/types.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace wavebound {

/// Sign conventions for lossy media under e^{-i omega t}: Im eps >= 0,
/// Im kappa <= 0, Im mu <= 0. Checks are on by default and can be switched
/// off for exploratory runs.
struct LossConvention {
  bool enforce = true;
};

/// Susceptibility chi1 = eps1 - 1 of an inclusion in a unit-permittivity host.
struct Contrast {
  Complex chi1;
  int dim;

  Contrast(Complex chi1, int dim);
  Complex eps1() const { return chi1 + 1.0; }
  bool is_real() const;
};

/// Admissible set for a complex quantity: either the closed region cut out by
/// the full circles of `boundary` (sides picked by `interior_witness`), or a
/// segment when the bounding curves collapse onto a line (real contrast) or a
/// point.
struct BoundRegion {
  std::vector<MobiusArcd> boundary;
  Complex interior_witness{};
  std::optional<std::pair<Complex, Complex>> segment;

  bool degenerate() const { return segment.has_value(); }
  const MobiusArcd& arc1() const { return boundary.at(0); }
  const MobiusArcd& arc2() const { return boundary.at(1); }
};

/// Real bounds on Tr(alpha)/(d|Omega|) for a real contrast, sorted ascending.
std::pair<Real, Real> hs_interval(const Contrast& contrast);

/// Lens for Tr(alpha)/(d|Omega|) bounded by the two circular arcs whose
/// corners are the disk/sphere value and the thin-shell value.
/// Throws DegenerateRegionError for real chi1.
BoundRegion bm_region(const Contrast& contrast, LossConvention loss = {});

/// The two 2-D curves for Tr(alpha)/(2|Omega|): a circular arc from the disk
/// value to the thin-annulus value, and the straight segment back to the disk
/// value. The segment's parameter runs over [0, 1/2]; at w = 1/2 it meets the
/// disk value.
std::pair<MobiusArcd, MobiusArcd> milton2d_curves(const Contrast& contrast);

/// BM lens tightened by both 2-D curves. Throws DegenerateRegionError for real
/// chi1.
BoundRegion milton2d_region(const Contrast& contrast, LossConvention loss = {});

enum class RegionKind { bergman_milton, milton };

/// Region for any contrast: the lens for complex chi1, the interval for real
/// chi1. `milton` requires dim == 2.
BoundRegion polarizability_region(const Contrast& contrast, RegionKind kind, LossConvention loss = {});

/// Finite-volume-fraction bounds on eps* for a two-phase composite with
/// eps2 = 1.
struct CompositeBounds {
  BoundRegion bergman_milton;
  std::optional<BoundRegion> milton;  // dim == 2 only
};

CompositeBounds bm_composite_region(Complex eps1, Real volume_fraction, int dim);

/// Closed-region membership with a relative tolerance tol * (1 + |z|).
bool region_contains(const BoundRegion& region, Complex z, Real tol = 1e-12);

/// Smallest signed distance from z to the region's bounding circles, positive
/// inside. For a degenerate region this is the distance to the nearer segment
/// end along the segment minus the distance off it.
Real region_margin(const BoundRegion& region, Complex z);

// Elastic moduli and their Y-transforms.

struct ElasticModuliPair {
  Complex kappa1;
  Complex mu1;
  Real kappa0;
  Real mu0;
  Real volume_fraction;

  void validate(LossConvention loss = {}) const;
};

struct YPair {
  Complex y_kappa;
  Complex y_mu;
};

/// Y-transforms of effective bulk and shear moduli at finite volume fraction.
YPair elastic_y_transform(const ElasticModuliPair& moduli, Complex kappa_star, Complex mu_star,
                          LossConvention loss = {});

/// Inverse of elastic_y_transform: effective (kappa*, mu*) from (y_kappa, y_mu).
std::pair<Complex, Complex> effective_from_y(const ElasticModuliPair& moduli, const YPair& y);

/// Dilute-limit Y-transforms in terms of the orientation-averaged bulk and
/// shear polarizabilities per unit inclusion volume.
YPair polarizability_to_y(Complex alpha_kappa, Complex alpha_mu, const ElasticModuliPair& moduli,
                          LossConvention loss = {});

}  // namespace wavebound
