#include <wavebound/bounds.hpp>

#include <cmath>

namespace wavebound {

namespace {

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// -(1-p) x1 - p x0 + p(1-p)(x1-x0)^2 / (p x1 + (1-p) x0 - x_star)
Complex y_of(Complex x1, Real x0, Real p, Complex x_star, const char* name) {
  const Complex den = p * x1 + (1.0 - p) * x0 - x_star;
  if (std::abs(den) <= 1e-14 * scale_of(x_star))
    throw SingularError(std::string("elastic Y-transform: denominator vanishes for ") + name,
                        "elastic Y-transform");
  return -(1.0 - p) * x1 - p * x0 + p * (1.0 - p) * (x1 - x0) * (x1 - x0) / den;
}

Complex effective_of(Complex x1, Real x0, Real p, Complex y, const char* name) {
  const Complex mixture = p * x1 + (1.0 - p) * x0;
  if (p * (1.0 - p) == 0.0) return mixture;
  const Complex den = y + (1.0 - p) * x1 + p * x0;
  if (std::abs(den) <= 1e-14 * scale_of(y))
    throw SingularError(std::string("inverse Y-transform: denominator vanishes for ") + name,
                        "elastic Y-transform");
  return mixture - p * (1.0 - p) * (x1 - x0) * (x1 - x0) / den;
}

Complex dilute_y(Complex x1, Real x0, Complex alpha, const char* name) {
  const Complex den = x1 - x0 * (1.0 + alpha);
  if (std::abs(den) <= 1e-14 * scale_of(x1))
    throw SingularError(std::string("dilute Y-transform: denominator vanishes for ") + name,
                        "dilute elastic Y-transform");
  return -x1 + (x1 - x0) * (x1 - x0) / den;
}

}  // namespace

void ElasticModuliPair::validate(LossConvention loss) const {
  if (!(kappa0 > 0.0) || !(mu0 > 0.0)) throw DomainError("matrix moduli kappa0, mu0 must be positive");
  if (!(volume_fraction >= 0.0 && volume_fraction <= 1.0))
    throw DomainError("volume fraction outside [0, 1]");
  if (!is_finite(kappa1) || !is_finite(mu1)) throw DomainError("inclusion moduli must be finite");
  if (kappa1 == Complex(kappa0) || mu1 == Complex(mu0))
    throw DomainError("inclusion and matrix moduli coincide: Y-transform is 0/0");
  if (loss.enforce && (kappa1.imag() > 0.0 || mu1.imag() > 0.0))
    throw DomainError("inclusion moduli with positive imaginary part violate the loss convention");
}

YPair elastic_y_transform(const ElasticModuliPair& m, Complex kappa_star, Complex mu_star, LossConvention loss) {
  m.validate(loss);
  const Real p = m.volume_fraction;
  return {y_of(m.kappa1, m.kappa0, p, kappa_star, "kappa"), y_of(m.mu1, m.mu0, p, mu_star, "mu")};
}

std::pair<Complex, Complex> effective_from_y(const ElasticModuliPair& m, const YPair& y) {
  m.validate(LossConvention{false});
  const Real p = m.volume_fraction;
  return {effective_of(m.kappa1, m.kappa0, p, y.y_kappa, "kappa"), effective_of(m.mu1, m.mu0, p, y.y_mu, "mu")};
}

YPair polarizability_to_y(Complex alpha_kappa, Complex alpha_mu, const ElasticModuliPair& m, LossConvention loss) {
  m.validate(loss);
  return {dilute_y(m.kappa1, m.kappa0, alpha_kappa, "kappa"), dilute_y(m.mu1, m.mu0, alpha_mu, "mu")};
}

}  // namespace wavebound
