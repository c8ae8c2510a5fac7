#pragma once

#include <wavebound/types.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace wavebound {

/// Pixelated inclusion in a periodic cell of n^d pixels; mask uses the same
/// ordering as FftGrid (last axis fastest).
struct PixelInclusion {
  int dim = 2;
  int n = 0;
  std::vector<std::uint8_t> mask;
  Real cell_length = 1.0;

  Eigen::Index points() const { return static_cast<Eigen::Index>(mask.size()); }
  Eigen::Index count() const;
  Real fill_fraction() const { return Real(count()) / Real(points()); }
  /// Throws DomainError unless the mask is non-empty, sized n^d with n a
  /// power of two, and clear of the cell boundary by at least n/4 pixels.
  void validate() const;
};

// Rasterizers: a pixel is inside when its centre is. Shapes are centred in
// the cell.
PixelInclusion square_inclusion(int dim, int n, Real fill_fraction);
PixelInclusion disk_inclusion(int dim, int n, Real fill_fraction);
PixelInclusion disk_inclusion_radius(int dim, int n, Real radius_pixels);
/// Ellipse (d = 2) or ellipsoid (d = 3) with semi-axes given in pixels.
PixelInclusion ellipse_inclusion(int n, const VectorXr& semi_axes);

/// Loads a mask from a PBM file (P1 or P4; 2-D only, square) or a raw file of
/// n^d bytes (nonzero = inclusion).
PixelInclusion load_pbm(const std::string& path);
PixelInclusion load_raw(const std::string& path, int dim, int n);

struct GridSolveOptions {
  Real tol = 1e-8;
  int max_iter = 3000;
  int restart = 80;
};

struct DipoleSolution {
  VectorXc column;  // (1/|Omega|) * integral over the inclusion of (eps1 - 1) e
  VectorXc field;   // e on the inclusion pixels, component-major
  Real residual = 0;
  int iterations = 0;
  std::vector<Real> history;
};

/// Periodic cell problem with unit host permittivity and mean field equal to
/// `direction`. Throws ConvergenceError carrying the residual history.
DipoleSolution solve_dipole(const PixelInclusion& inclusion, Complex eps1, const VectorXr& direction,
                            const GridSolveOptions& options = {});

struct PolarizabilityEstimate {
  MatrixXc alpha_over_volume;
  Real residual = 0;
  std::vector<Real> fill_fractions;
  Real extrapolation_increment = 0;

  Complex trace_average() const { return alpha_over_volume.trace() / Real(alpha_over_volume.rows()); }
};

/// All d columns of alpha/|Omega|.
PolarizabilityEstimate polarizability_tensor(const PixelInclusion& inclusion, Complex eps1,
                                             const GridSolveOptions& options = {});

/// Linear-in-p extrapolation to p = 0 from the two smallest fill fractions.
/// Estimates must be ordered by strictly decreasing fill fraction, each at
/// least a factor 2 below the previous.
PolarizabilityEstimate extrapolate_dilute(const std::vector<PolarizabilityEstimate>& estimates);

}  // namespace wavebound
