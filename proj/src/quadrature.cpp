#include <wavebound/quadrature.hpp>

#include <cmath>

namespace wavebound {

QuadratureRule gauss_legendre(int n, Real a, Real b) {
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");
  QuadratureRule rule{VectorXr(n), VectorXr(n)};
  const Real mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Real x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    Real dp = 0;
    for (int it = 0; it < 100; ++it) {
      Real p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const Real p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const Real dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const Real w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes(i) = mid - half * x;
    rule.nodes(n - 1 - i) = mid + half * x;
    rule.weights(i) = rule.weights(n - 1 - i) = half * w;
  }
  return rule;
}

namespace {

constexpr Real kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                          0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                          0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                          0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr Real kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                          0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                          0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                          0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr Real kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                         0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

void gk15(const std::function<Complex(Real)>& f, Real a, Real b, Complex& kronrod, Real& err) {
  const Real c = 0.5 * (a + b), h = 0.5 * (b - a);
  const Complex fc = f(c);
  Complex k = fc * kWgk[7];
  Complex g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const Complex f1 = f(c - h * kXgk[j]), f2 = f(c + h * kXgk[j]);
    k += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) g += kWg[j / 2] * (f1 + f2);
  }
  kronrod = k * h;
  err = std::abs((k - g) * h);
}

void recurse(const std::function<Complex(Real)>& f, Real a, Real b, Complex whole, Real err, Real abs_tol,
             Real rel_tol, int depth, int max_depth, AdaptiveResult& out) {
  if (err <= std::max(abs_tol, rel_tol * std::abs(whole))) {
    out.value += whole;
    out.error_estimate += err;
    return;
  }
  if (depth >= max_depth)
    throw ConvergenceError("adaptive_gk15: depth limit reached", {err}, "adaptive quadrature");
  const Real m = 0.5 * (a + b);
  Complex left, right;
  Real el, er;
  gk15(f, a, m, left, el);
  gk15(f, m, b, right, er);
  out.evaluations += 30;
  recurse(f, a, m, left, el, 0.5 * abs_tol, rel_tol, depth + 1, max_depth, out);
  recurse(f, m, b, right, er, 0.5 * abs_tol, rel_tol, depth + 1, max_depth, out);
}

}  // namespace

AdaptiveResult adaptive_gk15(const std::function<Complex(Real)>& f, Real a, Real b, Real abs_tol, Real rel_tol,
                             int max_depth) {
  AdaptiveResult out;
  out.value = 0.0;
  Complex whole;
  Real err;
  gk15(f, a, b, whole, err);
  out.evaluations = 15;
  recurse(f, a, b, whole, err, abs_tol, rel_tol, 0, max_depth, out);
  return out;
}

}  // namespace wavebound
