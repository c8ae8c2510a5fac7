#include <wavebound/bounds.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace wavebound {

namespace {

using Matrix2 = MobiusArcd::Matrix2;

constexpr Real kEndpointTol = 1e-12;

Matrix2 affine(Complex slope, Complex offset) { return mobius_affine<Real>(slope, offset); }
Matrix2 reciprocal() { return mobius_reciprocal<Real>(); }

bool nearly_real(Complex z) { return std::abs(z.imag()) <= 1e-14 * (1.0 + std::abs(z)); }

void check_loss(const Contrast& contrast, LossConvention loss) {
  if (loss.enforce && contrast.chi1.imag() < 0.0)
    throw DomainError("susceptibility with Im(chi1) < 0 (gain medium) is outside the loss convention");
}

// Side of each bounding circle on which the witness lies: +1 outside / right
// of the line, -1 inside / left.
Real side_of(const GeneralizedCircle<Real>& circle, Complex z) {
  return circle.signed_distance(z) > 0.0 ? 1.0 : -1.0;
}

// Checks that the witness is off every circle, and that the arcs from index
// `defining_from` on (the pair that actually bounds the region) sit inside it.
void validate_region(const BoundRegion& region, std::size_t defining_from) {
  const Complex w = region.interior_witness;
  for (const auto& arc : region.boundary) {
    const auto circle = arc.circle();
    const Real dist = std::abs(circle.signed_distance(w));
    if (!(dist > 1e-12 * scale_of(w)))
      throw NumericalError("bound region: interior witness lies on a bounding circle", "region witness");
  }
  for (std::size_t k = defining_from; k < region.boundary.size(); ++k) {
    const auto& arc = region.boundary[k];
    if (region_margin(region, arc.midpoint()) < -1e-9 * scale_of(arc.midpoint()))
      throw NumericalError("bound region: arc midpoint falls outside the region its circles define",
                           "region witness");
  }
}

void check_shared_endpoints(const MobiusArcd& first, const MobiusArcd& second) {
  const Complex lo1 = first(first.param_lo()), lo2 = second(second.param_lo());
  const Complex hi1 = first(first.param_hi()), hi2 = second(second.param_hi());
  if (std::abs(lo1 - lo2) > kEndpointTol * scale_of(lo1) || std::abs(hi1 - hi2) > kEndpointTol * scale_of(hi1))
    throw NumericalError("bound region: arcs do not share their endpoints", "lens endpoint identity");
}

BoundRegion segment_region(Complex a, Complex b, std::vector<MobiusArcd> arcs) {
  BoundRegion region;
  region.boundary = std::move(arcs);
  region.segment = std::make_pair(a, b);
  region.interior_witness = 0.5 * (a + b);
  return region;
}

BoundRegion lens_region(std::vector<MobiusArcd> arcs, Complex witness) {
  BoundRegion region;
  region.boundary = std::move(arcs);
  region.interior_witness = witness;
  validate_region(region, region.boundary.size() - 2);
  return region;
}

// Bound curves on Tr(alpha)/(d|Omega|), parametrized over [0, 1].
MobiusArcd bm_arc1(Complex chi, int d) {
  // chi - chi^2 / (1 + chi + (d-1) (v/(1+chi) + 1 - v)^{-1})
  const Matrix2 m = affine(-chi * chi, chi) * reciprocal() * affine(Real(d - 1), 1.0 + chi) * reciprocal() *
                    affine(1.0 / (1.0 + chi) - 1.0, 1.0);
  return MobiusArcd(m);
}

MobiusArcd bm_arc2(Complex chi, int d) {
  // chi - chi^2 / (1 + chi + (d-1) (w chi + 1))
  const Matrix2 m = affine(-chi * chi, chi) * reciprocal() * affine(Real(d - 1), 1.0 + chi) * affine(chi, 1.0);
  return MobiusArcd(m);
}

}  // namespace

Contrast::Contrast(Complex chi1_, int dim_) : chi1(chi1_), dim(dim_) {
  if (dim != 2 && dim != 3) throw DomainError("dimension must be 2 or 3");
  if (!std::isfinite(chi1.real()) || !std::isfinite(chi1.imag())) throw DomainError("chi1 must be finite");
}

bool Contrast::is_real() const { return nearly_real(chi1); }

std::pair<Real, Real> hs_interval(const Contrast& contrast) {
  if (!contrast.is_real()) throw DomainError("hs_interval: chi1 must be real");
  const Real chi = contrast.chi1.real();
  const Real d = contrast.dim;
  if (chi == -1.0 || chi == -d) throw PoleError("hs_interval: chi1 at a pole (-1 or -d)", "Hashin-Shtrikman interval");
  if (!(chi > -1.0)) throw DomainError("hs_interval: requires eps1 = 1 + chi1 > 0");
  const Real thin_shell = chi - chi * chi / (d * (1.0 + chi));
  const Real ball = chi - chi * chi / (chi + d);
  return {std::min(thin_shell, ball), std::max(thin_shell, ball)};
}

BoundRegion bm_region(const Contrast& contrast, LossConvention loss) {
  if (contrast.is_real())
    throw DegenerateRegionError("bm_region: real chi1 gives a degenerate lens; use hs_interval", "Hashin-Shtrikman interval");
  check_loss(contrast, loss);
  const Complex chi = contrast.chi1;
  if (std::abs(chi + 1.0) == 0.0 || std::abs(chi + Real(contrast.dim)) == 0.0)
    throw PoleError("bm_region: chi1 at a pole", "Bergman-Milton arcs");
  MobiusArcd arc1 = bm_arc1(chi, contrast.dim);
  MobiusArcd arc2 = bm_arc2(chi, contrast.dim);
  check_shared_endpoints(arc1, arc2);
  const Complex witness = 0.5 * (arc1.midpoint() + arc2.midpoint());
  return lens_region({arc1, arc2}, witness);
}

std::pair<MobiusArcd, MobiusArcd> milton2d_curves(const Contrast& contrast) {
  if (contrast.dim != 2) throw DomainError("milton2d_curves: only defined for dim = 2");
  const Complex chi = contrast.chi1;
  if (std::abs(chi + 1.0) == 0.0 || std::abs(chi + 2.0) == 0.0)
    throw PoleError("milton2d_curves: chi1 at a pole", "two-dimensional arcs");
  // 2 chi (2 + chi) / ((2 + chi)^2 - v chi^2)
  const Matrix2 m1 = affine(2.0 * chi * (2.0 + chi), 0.0) * reciprocal() * affine(-chi * chi, (2.0 + chi) * (2.0 + chi));
  // chi (2 + chi) / (2 (1 + chi)) - w chi^3 / ((chi + 1)(chi + 2)); reaches the
  // disk value at w = 1/2.
  const Matrix2 m2 = affine(-chi * chi * chi / ((chi + 1.0) * (chi + 2.0)), chi * (2.0 + chi) / (2.0 * (1.0 + chi)));
  return {MobiusArcd(m1), MobiusArcd(m2, 0.0, 0.5)};
}

BoundRegion milton2d_region(const Contrast& contrast, LossConvention loss) {
  if (contrast.dim != 2) throw DomainError("milton2d_region: only defined for dim = 2");
  BoundRegion lens = bm_region(contrast, loss);
  auto [arc, chord] = milton2d_curves(contrast);
  if (std::abs(arc(0.0) - chord(0.5)) > kEndpointTol * scale_of(arc(0.0)) ||
      std::abs(arc(1.0) - chord(0.0)) > kEndpointTol * scale_of(arc(1.0)))
    throw NumericalError("milton2d_region: curves do not close", "two-dimensional arcs");
  const Complex witness = 0.5 * (arc.midpoint() + chord.midpoint());
  std::vector<MobiusArcd> boundary = lens.boundary;
  boundary.push_back(arc);
  boundary.push_back(chord);
  return lens_region(std::move(boundary), witness);
}

BoundRegion polarizability_region(const Contrast& contrast, RegionKind kind, LossConvention loss) {
  if (kind == RegionKind::milton && contrast.dim != 2) throw DomainError("Milton region requires dim = 2");
  if (contrast.is_real()) {
    const auto [lo, hi] = hs_interval(contrast);
    return segment_region(lo, hi, {});
  }
  return kind == RegionKind::milton ? milton2d_region(contrast, loss) : bm_region(contrast, loss);
}

CompositeBounds bm_composite_region(Complex eps1, Real p, int dim) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("bm_composite_region: volume fraction outside [0, 1]");
  if (dim != 2 && dim != 3) throw DomainError("dimension must be 2 or 3");
  if (eps1 == Complex(0.0)) throw PoleError("bm_composite_region: eps1 = 0", "Bergman-Milton arcs");
  const Complex chi = eps1 - 1.0;
  const Real q = 1.0 - p;
  const Complex host = q * eps1 + p;
  const Matrix2 outer = affine(-p * q * chi * chi, 1.0 + p * chi) * reciprocal() * affine(Real(dim - 1), host);
  MobiusArcd arc1(outer * reciprocal() * affine(1.0 / eps1 - 1.0, 1.0));
  MobiusArcd arc2(outer * affine(eps1 - 1.0, 1.0));

  CompositeBounds out;
  const bool flat = nearly_real(eps1) || arc1.degenerate();
  if (flat) {
    out.bergman_milton = segment_region(arc1(0.0), arc1(1.0), {arc1, arc2});
  } else {
    check_shared_endpoints(arc1, arc2);
    out.bergman_milton = lens_region({arc1, arc2}, 0.5 * (arc1.midpoint() + arc2.midpoint()));
  }

  if (dim == 2) {
    const Complex e = eps1 + 1.0;
    const Complex n0 = (p * eps1 + q + eps1) * e;
    const Complex d0 = (q * eps1 + p + 1.0) * e;
    MobiusArcd m1(-q * chi * chi, n0, -q * chi * chi, d0);
    const Complex a2 = (p * eps1 + 2.0 - p) * e;
    const Complex b2 = (q * eps1 + p + eps1) * e;
    MobiusArcd m2(-eps1 * p * chi * chi, eps1 * a2, -p * chi * chi, b2);
    if (flat) {
      out.milton = segment_region(m1(0.0), m1(1.0), {m1, m2});
    } else {
      std::vector<MobiusArcd> boundary = out.bergman_milton.boundary;
      boundary.push_back(m1);
      boundary.push_back(m2);
      out.milton = lens_region(std::move(boundary), 0.5 * (m1.midpoint() + m2.midpoint()));
    }
  }
  return out;
}

Real region_margin(const BoundRegion& region, Complex z) {
  if (region.degenerate()) {
    const auto [a, b] = *region.segment;
    const Real length = std::abs(b - a);
    if (length == 0.0) return -std::abs(z - a);
    const Complex u = (b - a) / length;
    const Complex local = std::conj(u) * (z - a);
    return std::min(local.real(), length - local.real()) - std::abs(local.imag());
  }
  Real margin = std::numeric_limits<Real>::infinity();
  for (const auto& arc : region.boundary) {
    const auto circle = arc.circle();
    const Real side = side_of(circle, region.interior_witness);
    margin = std::min(margin, side * circle.signed_distance(z));
  }
  return margin;
}

bool region_contains(const BoundRegion& region, Complex z, Real tol) {
  const Real slack = std::max(tol * scale_of(z), 1e-14);
  return region_margin(region, z) >= -slack;
}

}  // namespace wavebound
