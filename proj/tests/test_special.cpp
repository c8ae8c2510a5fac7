#include <catch_amalgamated.hpp>

#include <wavebound/oscillatory.hpp>
#include <wavebound/quadrature.hpp>
#include <wavebound/special.hpp>

#include <cmath>

using namespace wavebound;

namespace {

struct JRef {
  int l;
  double re_z, im_z, re, im;
};

// mpmath, 30 digits: sqrt(pi/(2z)) J_{l+1/2}(z).
const JRef kJ[] = {
    {0, 0.05, 0.0, 0.9995833854135666, 0.0},
    {1, 0.05, 0.0, 0.01666250037200659, 0.0},
    {5, 0.05, 0.0, 3.005963955507932e-11, 0.0},
    {20, 0.05, 0.0, 7.272488901648425e-52, 0.0},
    {60, 0.05, 0.0, 1.0279955111991585e-179, 0.0},
    {0, 1.3, 0.4, 0.7557455563190002, -0.14801727424655542},
    {1, 1.3, 0.4, 0.3814240803977896, 0.07322835330829332},
    {5, 1.3, 0.4, 4.996097047251282e-05, 0.00041921048826393535},
    {20, 1.3, 0.4, 3.3334033292378767e-23, -1.124330868581259e-23},
    {60, 1.3, 0.4, 7.155573639757269e-94, -9.877236372865532e-94},
    {0, 20.0, -3.0, 0.47943479038050163, -0.1324905342112306},
    {1, 20.0, -3.0, -0.1094013786680096, -0.48032330037887533},
    {5, 20.0, -3.0, 0.20545844493760582, -0.40159832136271667},
    {20, 20.0, -3.0, 0.02814163166447914, -0.05687659863335295},
    {60, 20.0, -3.0, -2.9167189979426547e-24, -4.465813835456646e-24},
    {0, 45.0, 12.0, 1673.1148462901665, 503.8212711517136},
    {1, 45.0, 12.0, -466.3219520512551, 1674.3110559950128},
    {5, 45.0, 12.0, 33.32129821354493, 1612.3388567473858},
    {20, 45.0, 12.0, -290.82308426887295, 456.33070470069964},
    {60, 45.0, 12.0, -2.1723689953320654e-05, -4.721353456187356e-05},
    {0, 3.14159, 0.0, 8.446645785582238e-07, 0.0},
    {1, 3.14159, 0.0, 0.3183104239130688, 0.0},
    {5, 3.14159, 0.0, 0.019935342685202955, 0.0},
    {20, 3.14159, 0.0, 5.960970803480661e-16, 0.0},
    {60, 3.14159, 0.0, 7.679556006273857e-72, 0.0},
};

struct YRef {
  int l;
  double z, value;
};

const YRef kY[] = {
    {0, 0.7, -1.0926316961206979}, {3, 0.7, -65.66978687182075},    {12, 0.7, -32988515188221.977},
    {0, 7.5, -0.04621804237800344}, {3, 7.5, 0.12704667901360375},   {12, 7.5, -4.941440948793943},
    {0, 30.0, -0.005141714996252802}, {3, 30.0, -0.03135999452101338}, {12, 30.0, -0.011950147350202287},
};

}  // namespace

TEST_CASE("spherical j_l matches arbitrary-precision values") {
  for (const auto& ref : kJ) {
    const Complex z(ref.re_z, ref.im_z);
    const Complex got = spherical_jn(80, z)(ref.l);
    const Complex want(ref.re, ref.im);
    INFO("l=" << ref.l << " z=" << z);
    CHECK(std::abs(got - want) <= 1e-12 * std::abs(want));
  }
}

TEST_CASE("spherical y_l matches arbitrary-precision values") {
  for (const auto& ref : kY) {
    const Complex got = spherical_yn(20, ref.z)(ref.l);
    INFO("l=" << ref.l << " z=" << ref.z);
    CHECK(std::abs(got - ref.value) <= 1e-12 * std::abs(ref.value));
    CHECK(std::abs(got.imag()) <= 1e-12 * std::abs(ref.value));
  }
}

TEST_CASE("Wronskian j_l y_l' - j_l' y_l = 1/z^2") {
  for (double x : {0.3, 2.0, 17.0, 44.0}) {
    const int L = 30;
    const VectorXc j = spherical_jn(L + 1, x), y = spherical_yn(L + 1, x);
    const VectorXc dj = spherical_derivative(j, x, L), dy = spherical_derivative(y, x, L);
    for (int l = 0; l <= L; ++l) {
      const Complex w = j(l) * dy(l) - dj(l) * y(l);
      const double scale = std::abs(j(l) * dy(l)) + std::abs(dj(l) * y(l));
      CHECK(std::abs(w - 1.0 / (x * x)) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("j_0(0) = 1 and higher orders vanish") {
  const VectorXc j = spherical_jn(5, 0.0);
  CHECK(j(0) == Complex(1.0));
  CHECK(j.tail(5).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Legendre recurrence") {
  const VectorXr p = legendre_p(4, 0.3);
  CHECK(p(2) == Catch::Approx(0.5 * (3 * 0.09 - 1)).epsilon(1e-15));
  CHECK(p(3) == Catch::Approx(0.5 * (5 * 0.027 - 3 * 0.3)).epsilon(1e-14));
  const VectorXr one = legendre_p(10, 1.0);
  CHECK((one.array() - 1.0).abs().maxCoeff() < 1e-14);
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  const QuadratureRule rule = gauss_legendre(10, 0.0, 2.0);
  double s = 0;
  for (int i = 0; i < 10; ++i) s += rule.weights(i) * std::pow(rule.nodes(i), 19);
  CHECK(s == Catch::Approx(std::pow(2.0, 20) / 20.0).epsilon(1e-13));
  CHECK(rule.weights.sum() == Catch::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("adaptive Gauss-Kronrod on a peaked complex integrand") {
  auto f = [](double t) { return Complex(1.0 / (1e-4 + t * t), std::cos(t)); };
  const auto res = adaptive_gk15(f, -1.0, 1.0, 1e-12, 1e-12);
  const double re = 2.0 * std::atan(1.0 / 1e-2) / 1e-2;
  CHECK(res.value.real() == Catch::Approx(re).epsilon(1e-11));
  CHECK(res.value.imag() == Catch::Approx(2.0 * std::sin(1.0)).epsilon(1e-12));
}

TEST_CASE("oscillatory asymptotics: trivial and one-endpoint cases") {
  auto zero = [](double) { return Complex(0.0); };
  CHECK(oscillatory_asymptotic(zero, -2.0, 2.0, 100.0) == Complex(0.0));
  // f(-1) = 0 leaves only the t = 1 contribution.
  auto f = [](double t) { return Complex(1.0 + t); };
  const Complex a = oscillatory_asymptotic(f, -2.0, 2.0, 37.0);
  CHECK(std::abs(a - 2.0 / (kI * -2.0)) < 1e-15);
  CHECK_THROWS_AS(oscillatory_asymptotic(f, 0.0, 1.0, 10.0), DomainError);
}

TEST_CASE("oscillatory quadrature approaches the asymptotic value like 1/r") {
  auto f = [](double t) { return Complex(1.0 + t); };
  double prev = 0;
  for (double r : {1e2, 1e3, 1e4}) {
    const double err = std::abs(oscillatory_integral(f, -2.0, 2.0, r) - oscillatory_asymptotic(f, -2.0, 2.0, r));
    CHECK(err * r < 2.0);  // |f'| / g'^2 scale with both endpoints
    if (prev > 0) CHECK(err < prev);
    prev = err;
  }
}
