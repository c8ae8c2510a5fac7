#include <catch_amalgamated.hpp>

#include <wavebound/bounds.hpp>
#include <wavebound/shapes.hpp>

#include <random>

using namespace wavebound;

namespace {

bool close(Complex a, Complex b, double tol = 1e-12) { return std::abs(a - b) <= tol * (1.0 + std::abs(b)); }

Complex random_lossy(std::mt19937& rng) {
  std::uniform_real_distribution<double> re(-0.9, 9.0), im(0.01, 5.0);
  return {re(rng), im(rng)};
}

}  // namespace

TEST_CASE("hs_interval examples") {
  auto [lo0, hi0] = hs_interval(Contrast(0.0, 3));
  CHECK(lo0 == 0.0);
  CHECK(hi0 == 0.0);
  auto [lo, hi] = hs_interval(Contrast(1.0, 3));
  CHECK(lo == Catch::Approx(0.75).epsilon(1e-15));
  CHECK(hi == Catch::Approx(5.0 / 6.0).epsilon(1e-15));
  CHECK(lo == Catch::Approx(3.0 * 1.0 / (1.0 + 3.0)).epsilon(1e-15));
  auto [lo2, hi2] = hs_interval(Contrast(1.0, 2));
  CHECK(lo2 == Catch::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(hi2 == Catch::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("hs_interval errors") {
  CHECK_THROWS_AS(hs_interval(Contrast(Complex(1.0, 0.5), 3)), DomainError);
  CHECK_THROWS_AS(hs_interval(Contrast(-1.0, 3)), PoleError);
  CHECK_THROWS_AS(hs_interval(Contrast(-2.0, 3)), DomainError);
  CHECK_THROWS_AS(Contrast(1.0, 4), DomainError);
}

TEST_CASE("bm_region examples") {
  const BoundRegion r = bm_region(Contrast(kI, 3));
  CHECK(close(r.arc1()(0.0), Complex(0.3, 0.9)));
  CHECK(close(r.arc1()(0.0), r.arc2()(0.0)));
  CHECK(close(r.arc1()(1.0), r.arc2()(1.0)));
  CHECK_THROWS_AS(bm_region(Contrast(2.0, 3)), DegenerateRegionError);
  CHECK_THROWS_AS(bm_region(Contrast(Complex(1.0, -0.1), 3)), DomainError);
  CHECK_NOTHROW(bm_region(Contrast(Complex(1.0, -0.1), 3), LossConvention{false}));

  // Midpoint of arc1 against the circle fitted through three samples of arc2.
  const BoundRegion r2 = bm_region(Contrast(Complex(0.5, 0.5), 2));
  const auto fitted = circle_through(r2.arc2()(0.0), r2.arc2()(0.5), r2.arc2()(1.0));
  const double inside_side = r2.arc2().circle().signed_distance(r2.interior_witness) > 0 ? 1.0 : -1.0;
  CHECK(inside_side * fitted.signed_distance(r2.arc1()(0.5)) >= -1e-12);
  CHECK(region_contains(r2, r2.arc1()(0.5), 1e-9));
}

TEST_CASE("region_contains examples") {
  const BoundRegion r = bm_region(Contrast(kI, 3));
  CHECK(region_contains(r, r.arc1()(0.5), 1e-9));
  CHECK_FALSE(region_contains(r, Complex(10.0, 10.0)));
  CHECK(region_contains(r, 3.0 * kI / (3.0 + kI)));
  CHECK(region_contains(r, r.interior_witness));
  CHECK(region_margin(r, r.interior_witness) > 0.0);
}

TEST_CASE("endpoint identity and Mobius circularity for random lossy contrasts") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Complex chi = random_lossy(rng);
    for (int d : {2, 3}) {
      const BoundRegion r = bm_region(Contrast(chi, d));
      CHECK(close(r.arc1()(0.0), r.arc2()(0.0)));
      CHECK(close(r.arc1()(1.0), r.arc2()(1.0)));
      CHECK(close(r.arc1()(0.0), chi - chi * chi / (chi + double(d))));
      CHECK(close(r.arc1()(1.0), chi - chi * chi / (double(d) * (1.0 + chi))));
      for (const auto& arc : r.boundary) {
        const Complex x = cross_ratio(arc(0.1), arc(0.4), arc(0.7), arc(0.95));
        CHECK(std::abs(x.imag()) < 1e-10 * (1.0 + std::abs(x)));
      }
    }
  }
}

TEST_CASE("HS consistency as Im chi -> 0+") {
  for (int d : {2, 3})
    for (double re : {-0.5, 0.5, 3.0}) {
      const BoundRegion r = bm_region(Contrast(Complex(re, 1e-6), d));
      double worst = 0;
      for (const auto& arc : r.boundary)
        for (const Complex& z : arc.sample(101)) worst = std::max(worst, std::abs(z.imag()));
      CHECK(worst < 1e-5);
    }
}

TEST_CASE("milton2d_curves examples") {
  const auto [arc, chord] = milton2d_curves(Contrast(1.0, 2));
  CHECK(arc(0.0).real() == Catch::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(arc(1.0).real() == Catch::Approx(0.75).epsilon(1e-14));
  CHECK(std::abs(chord(0.0) - arc(1.0)) < 1e-15);
  const Complex chi = kI;
  const auto [arc_i, chord_i] = milton2d_curves(Contrast(chi, 2));
  const Complex start = chi * (2.0 + chi) / (2.0 * (1.0 + chi));
  CHECK(close(chord_i(0.0), start));
  CHECK(close(chord_i(1.0), start - chi * chi * chi / ((chi + 1.0) * (chi + 2.0))));
  // The chord reaches the disk value at the end of its parameter range.
  CHECK(close(chord_i(chord_i.param_hi()), 2.0 * chi / (2.0 + chi)));
  CHECK_THROWS_AS(milton2d_curves(Contrast(chi, 3)), DomainError);
}

TEST_CASE("Milton 2-D curves lie inside the BM lens") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Contrast c(random_lossy(rng), 2);
    const BoundRegion lens = bm_region(c);
    const BoundRegion milton = milton2d_region(c);
    const auto [arc, chord] = milton2d_curves(c);
    for (const auto& curve : {arc, chord})
      for (const Complex& z : curve.sample(101)) {
        CHECK(region_contains(lens, z, 1e-9));
        CHECK(region_contains(milton, z, 1e-9));
      }
    // Both corners remain admissible in the tighter region.
    CHECK(region_contains(milton, ball_polarizability(c.chi1, 2), 1e-12));
    CHECK(region_contains(milton, thin_shell_polarizability(c.chi1, 2), 1e-12));
  }
}

TEST_CASE("bm_composite_region examples") {
  const CompositeBounds none = bm_composite_region(1.0, 0.3, 3);
  REQUIRE(none.bergman_milton.degenerate());
  CHECK(std::abs(none.bergman_milton.segment->first - 1.0) < 1e-15);
  CHECK(std::abs(none.bergman_milton.segment->second - 1.0) < 1e-15);
  CHECK(region_contains(none.bergman_milton, 1.0));

  const CompositeBounds pure = bm_composite_region(2.0, 1.0, 3);
  CHECK(std::abs(pure.bergman_milton.arc1()(0.3) - 2.0) < 1e-14);
  CHECK(std::abs(pure.bergman_milton.arc2()(0.8) - 2.0) < 1e-14);
  const CompositeBounds pure_lossy = bm_composite_region(Complex(2.0, 1.0), 1.0, 2);
  CHECK(region_contains(pure_lossy.bergman_milton, Complex(2.0, 1.0)));
  CHECK_FALSE(region_contains(pure_lossy.bergman_milton, Complex(2.0, 1.1)));

  CHECK_THROWS_AS(bm_composite_region(2.0, 1.5, 3), DomainError);
  CHECK_FALSE(bm_composite_region(2.0, 0.5, 3).milton.has_value());
  CHECK(bm_composite_region(Complex(2.0, 1.0), 0.5, 2).milton.has_value());
}

TEST_CASE("dilute limit of the composite arcs") {
  const Complex eps1(1.0, 1.0);
  for (int d : {2, 3}) {
    const BoundRegion lim = bm_region(Contrast(eps1 - 1.0, d));
    double previous = 0;
    for (double p : {1e-3, 1e-4}) {
      const CompositeBounds cb = bm_composite_region(eps1, p, d);
      double worst = 0;
      for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        worst = std::max(worst, std::abs((cb.bergman_milton.arc1()(t) - 1.0) / p - lim.arc1()(t)));
        worst = std::max(worst, std::abs((cb.bergman_milton.arc2()(t) - 1.0) / p - lim.arc2()(t)));
      }
      CHECK(worst < 10.0 * p);
      if (previous > 0) CHECK(worst < 0.2 * previous);
      previous = worst;
    }
  }
  // The finite-p Milton curves share both endpoints (in opposite parameter
  // order) and tend to the 2-D arcs.
  const Complex chi = eps1 - 1.0;
  const double p = 1e-5;
  const CompositeBounds cb = bm_composite_region(eps1, p, 2);
  const auto& m = cb.milton->boundary;
  const auto& m1 = m[m.size() - 2];
  const auto& m2 = m[m.size() - 1];
  CHECK(close(m1(0.0), m2(1.0)));
  CHECK(close(m1(1.0), m2(0.0)));
  const auto [arc, chord] = milton2d_curves(Contrast(chi, 2));
  CHECK(std::abs((m1(0.4) - 1.0) / p - arc(0.4)) < 1e-3);
  CHECK(std::abs((m2(0.4) - 1.0) / p - chord(0.2)) < 1e-3);
}

TEST_CASE("elastic Y-transform examples") {
  ElasticModuliPair m{Complex(2.0, 0.2), Complex(1.5, 0.1), 1.0, 1.0, 0.25};
  const LossConvention off{false};
  const YPair y = elastic_y_transform(m, Complex(1.2, 0.05), Complex(1.1, 0.02), off);
  CHECK(close(y.y_kappa, Complex(1.85, 1.35), 1e-13));
  const auto [ks, ms] = effective_from_y(m, y);
  CHECK(close(ks, Complex(1.2, 0.05)));
  CHECK(close(ms, Complex(1.1, 0.02)));
  // This example has Im kappa1 > 0, outside the default loss convention.
  CHECK_THROWS_AS(elastic_y_transform(m, Complex(1.2, 0.05), Complex(1.1, 0.02)), DomainError);

  ElasticModuliPair same = m;
  same.kappa1 = 1.0;
  CHECK_THROWS_AS(elastic_y_transform(same, 1.0, 1.0, off), DomainError);
  CHECK_THROWS_AS(elastic_y_transform(m, 0.25 * Complex(2.0, 0.2) + 0.75, 1.3, off), SingularError);
}

TEST_CASE("elastic Y-transform round trip for random inputs") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.1, 3.0), v(-1.0, -0.01), pf(0.05, 0.95);
  for (int trial = 0; trial < 100; ++trial) {
    ElasticModuliPair m{Complex(u(rng), v(rng)), Complex(u(rng), v(rng)), u(rng), u(rng), pf(rng)};
    const Complex ks(u(rng), v(rng)), ms(u(rng), v(rng));
    const YPair y = elastic_y_transform(m, ks, ms);
    const auto [k2, m2] = effective_from_y(m, y);
    CHECK(close(k2, ks));
    CHECK(close(m2, ms));
    const YPair y2 = elastic_y_transform(m, k2, m2);
    CHECK(close(y2.y_kappa, y.y_kappa, 1e-11));
  }
}

TEST_CASE("polarizability_to_y examples and dilute consistency") {
  const LossConvention off{false};
  ElasticModuliPair m{Complex(2.0, 0.2), Complex(1.5, 0.1), 1.0, 1.0, 0.0};
  const YPair y = polarizability_to_y(Complex(0.4, -0.1), 0.3, m, off);
  CHECK(close(y.y_kappa, Complex(-34.0 / 75.0, -23.0 / 75.0), 1e-14));
  const YPair y0 = polarizability_to_y(0.0, 0.0, m, off);
  CHECK(close(y0.y_kappa, -1.0, 1e-14));
  CHECK(close(y0.y_mu, -1.0, 1e-14));

  ElasticModuliPair lossy{Complex(2.0, -0.2), Complex(1.5, -0.1), 1.0, 1.3, 0.0};
  const Complex ak(0.4, -0.1), am(0.2, -0.05);
  const YPair limit = polarizability_to_y(ak, am, lossy);
  double previous = 0;
  for (double p : {1e-3, 1e-4}) {
    ElasticModuliPair mp = lossy;
    mp.volume_fraction = p;
    const Complex ks = (1.0 + p * ak) * lossy.kappa0;
    const Complex ms = (1.0 + p * am) * lossy.mu0;
    const YPair yp = elastic_y_transform(mp, ks, ms);
    const double gap = std::abs(yp.y_kappa - limit.y_kappa) + std::abs(yp.y_mu - limit.y_mu);
    CHECK(gap < 20.0 * p);
    if (previous > 0) CHECK(gap < 0.2 * previous);
    previous = gap;
  }
  CHECK_THROWS_AS(polarizability_to_y(1.0, 0.0, ElasticModuliPair{2.0, 1.5, 1.0, 1.0, 0.0}), SingularError);
}
