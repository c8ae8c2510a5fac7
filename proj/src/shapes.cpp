#include <wavebound/shapes.hpp>

#include <cmath>
#include <string>

namespace wavebound {

namespace {

void check_dim(int dim) {
  if (dim != 2 && dim != 3) throw DomainError("dimension must be 2 or 3");
}

bool vanishes(Complex den, Complex ref) { return std::abs(den) <= 1e-14 * scale_of(ref); }

}  // namespace

void InclusionShape::validate() const {
  check_dim(dim);
  if (kind == ShapeKind::ellipse_or_ellipsoid) {
    if (depolarization_factors.size() != dim) throw DomainError("need one depolarization factor per dimension");
    if ((depolarization_factors.array() < 0.0).any() || (depolarization_factors.array() > 1.0).any())
      throw DomainError("depolarization factors must lie in [0, 1]");
    if (std::abs(depolarization_factors.sum() - 1.0) > 1e-12) throw DomainError("depolarization factors must sum to 1");
  }
  if (kind == ShapeKind::coated_sphere_or_shell && !(core_fraction >= 0.0 && core_fraction < 1.0))
    throw DomainError("core fraction must lie in [0, 1)");
}

Complex ball_polarizability(Complex chi1, int dim) {
  check_dim(dim);
  const Complex den = chi1 + Real(dim);
  if (vanishes(den, chi1)) throw PoleError("ball polarizability: chi1 = -d", "ball polarizability");
  return Real(dim) * chi1 / den;
}

VectorXc ellipsoid_polarizability(Complex chi1, const VectorXr& factors) {
  VectorXc out(factors.size());
  for (Eigen::Index i = 0; i < factors.size(); ++i) {
    const Complex den = 1.0 + factors(i) * chi1;
    if (vanishes(den, chi1))
      throw PoleError("ellipsoid polarizability: resonant denominator at axis " + std::to_string(i),
                      "ellipsoid depolarization");
    out(i) = chi1 / den;
  }
  return out;
}

Complex coated_polarizability(Complex chi1, int dim, Real f) {
  check_dim(dim);
  if (!(f >= 0.0 && f < 1.0)) throw DomainError("core fraction must lie in [0, 1)");
  // Concentric solution: permittivity of the coated ball seen from outside,
  // then the ball formula, rescaled from the outer volume to the coating.
  const Complex es = 1.0 + chi1;
  const Complex ec = 1.0;
  const Real dm1 = dim - 1;
  const Complex den = ec + dm1 * es - f * (ec - es);
  if (vanishes(den, es)) throw PoleError("coated polarizability: interior resonance", "coated ball");
  const Complex eff = es * (ec + dm1 * es + dm1 * f * (ec - es)) / den;
  return ball_polarizability(eff - 1.0, dim) / (1.0 - f);
}

Complex thin_shell_polarizability(Complex chi1, int dim) {
  check_dim(dim);
  if (vanishes(1.0 + chi1, chi1)) throw PoleError("thin-shell polarizability: chi1 = -1", "thin-shell limit");
  return chi1 - chi1 * chi1 / (Real(dim) * (1.0 + chi1));
}

Complex shape_polarizability(const InclusionShape& shape, Complex chi1) {
  shape.validate();
  switch (shape.kind) {
    case ShapeKind::sphere_or_disk:
      return ball_polarizability(chi1, shape.dim);
    case ShapeKind::ellipse_or_ellipsoid:
      return ellipsoid_polarizability(chi1, shape.depolarization_factors).mean();
    case ShapeKind::coated_sphere_or_shell:
      return coated_polarizability(chi1, shape.dim, shape.core_fraction);
  }
  throw DomainError("unknown shape kind");
}

}  // namespace wavebound
