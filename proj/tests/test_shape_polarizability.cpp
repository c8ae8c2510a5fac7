#include <catch_amalgamated.hpp>

#include <wavebound/bounds.hpp>
#include <wavebound/shapes.hpp>

#include <random>

using namespace wavebound;

namespace {
bool close(Complex a, Complex b, double tol = 1e-12) { return std::abs(a - b) <= tol * (1.0 + std::abs(b)); }
}  // namespace

TEST_CASE("ball polarizability") {
  CHECK(ball_polarizability(0.0, 3) == Complex(0.0));
  CHECK(close(ball_polarizability(1.0, 3), 0.75));
  CHECK(close(ball_polarizability(1.0, 3), hs_interval(Contrast(1.0, 3)).first));
  CHECK(close(ball_polarizability(kI, 2), Complex(0.4, 0.8)));
  CHECK_THROWS_AS(ball_polarizability(-3.0, 3), PoleError);
}

TEST_CASE("ellipsoid polarizability") {
  const Complex chi(0.7, 0.4);
  for (int d : {2, 3}) {
    const VectorXc e = ellipsoid_polarizability(chi, VectorXr::Constant(d, 1.0 / d));
    CHECK(close(e.mean(), ball_polarizability(chi, d)));
  }
  const VectorXc needle = ellipsoid_polarizability(1.0, Eigen::Vector2d(0.0, 1.0));
  CHECK(close(needle(0), 1.0));
  CHECK(close(needle(1), 0.5));
  CHECK(close(needle.mean(), hs_interval(Contrast(1.0, 2)).second));
  const VectorXc e = ellipsoid_polarizability(kI, Eigen::Vector2d(0.2, 0.8));
  CHECK(close(e(0), kI / (1.0 + 0.2 * kI)));
  CHECK(close(e(1), kI / (1.0 + 0.8 * kI)));
  try {
    ellipsoid_polarizability(-1.25, Eigen::Vector2d(0.2, 0.8));
    FAIL("expected a pole");
  } catch (const PoleError& err) {
    CHECK(std::string(err.what()).find("axis 1") != std::string::npos);
  }
}

TEST_CASE("thin shell and coated limit") {
  CHECK(thin_shell_polarizability(0.0, 2) == Complex(0.0));
  CHECK(thin_shell_polarizability(0.0, 3) == Complex(0.0));
  CHECK(close(thin_shell_polarizability(1.0, 2), 0.75));
  CHECK_THROWS_AS(thin_shell_polarizability(-1.0, 2), PoleError);
  const Complex limit = thin_shell_polarizability(kI, 2);
  CHECK(std::abs(coated_polarizability(kI, 2, 0.999) - limit) < 1e-2 * std::abs(limit));
  // The coating converges to the limit linearly in its thickness.
  for (int d : {2, 3}) {
    const Complex chi(2.0, 1.5);
    const double e1 = std::abs(coated_polarizability(chi, d, 0.99) - thin_shell_polarizability(chi, d));
    const double e2 = std::abs(coated_polarizability(chi, d, 0.999) - thin_shell_polarizability(chi, d));
    CHECK(e2 < 0.2 * e1);
  }
  // No core is just the ball.
  CHECK(close(coated_polarizability(Complex(0.3, 0.2), 3, 0.0), ball_polarizability(Complex(0.3, 0.2), 3)));
}

TEST_CASE("shape values lie in the bound regions for random lossy contrasts") {
  std::mt19937 rng(19);
  std::uniform_real_distribution<double> re(-0.9, 9.0), im(0.01, 5.0), u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Complex chi(re(rng), im(rng));
    for (int d : {2, 3}) {
      const Contrast c(chi, d);
      const BoundRegion lens = bm_region(c);
      VectorXr factors(d);
      for (int i = 0; i < d; ++i) factors(i) = u(rng) + 1e-3;
      factors /= factors.sum();
      std::vector<Complex> values = {ball_polarizability(chi, d), thin_shell_polarizability(chi, d),
                                     ellipsoid_polarizability(chi, factors).mean(),
                                     coated_polarizability(chi, d, 0.98 * u(rng))};
      for (const Complex& v : values) {
        CHECK(region_contains(lens, v, 1e-9));
        if (d == 2) CHECK(region_contains(milton2d_region(c), v, 1e-9));
      }
      // The corners are exact.
      CHECK(close(values[0], lens.arc1()(0.0)));
      CHECK(close(values[1], lens.arc1()(1.0)));
    }
  }
}

TEST_CASE("ellipse trace moves monotonically from the disk corner") {
  const Complex chi(1.5, 2.0);
  const Complex corner = ball_polarizability(chi, 2);
  double previous = -1.0;
  for (int k = 0; k <= 50; ++k) {
    const double s = k / 50.0;
    const Complex v = ellipsoid_polarizability(chi, Eigen::Vector2d(0.5 - 0.5 * s, 0.5 + 0.5 * s)).mean();
    const double dist = std::abs(v - corner);
    CHECK(dist >= previous);
    previous = dist;
  }
  CHECK(close(ellipsoid_polarizability(chi, Eigen::Vector2d(0.0, 1.0)).mean(), thin_shell_polarizability(chi, 2)));
}

TEST_CASE("InclusionShape validation and dispatch") {
  InclusionShape s;
  s.kind = ShapeKind::ellipse_or_ellipsoid;
  s.dim = 2;
  s.depolarization_factors = Eigen::Vector2d(0.3, 0.6);
  CHECK_THROWS_AS(s.validate(), DomainError);
  s.depolarization_factors = Eigen::Vector2d(0.3, 0.7);
  CHECK(close(shape_polarizability(s, kI), ellipsoid_polarizability(kI, s.depolarization_factors).mean()));
  s.kind = ShapeKind::coated_sphere_or_shell;
  s.core_fraction = 1.0;
  CHECK_THROWS_AS(s.validate(), DomainError);
}
