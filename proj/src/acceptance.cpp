#include <wavebound/acceptance.hpp>
#include <wavebound/backscatter.hpp>
#include <wavebound/bounds.hpp>
#include <wavebound/grid.hpp>
#include <wavebound/mie.hpp>
#include <wavebound/oscillatory.hpp>
#include <wavebound/parallel.hpp>
#include <wavebound/shapes.hpp>
#include <wavebound/y_problem.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

namespace wavebound {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt2(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

Real rel_gap(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// --- 1: corners of the lens --------------------------------------------------

CriterionResult corners(const AcceptanceOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<Real> re(-0.9, 10.0), im(0.01, 10.0);
  Real worst = 0;
  for (int k = 0; k < 100; ++k) {
    const Complex chi(re(rng), im(rng));
    for (int d : {2, 3}) {
      const Complex ball_corner = chi - chi * chi / (chi + Real(d));
      const Complex shell_corner = chi - chi * chi / (Real(d) * (1.0 + chi));
      worst = std::max({worst, rel_gap(ball_polarizability(chi, d), ball_corner),
                        rel_gap(thin_shell_polarizability(chi, d), shell_corner)});
      // Both values are the endpoints of the lens arcs.
      const BoundRegion lens = bm_region(Contrast(chi, d));
      worst = std::max({worst, rel_gap(lens.arc1()(0.0), ball_corner), rel_gap(lens.arc1()(1.0), shell_corner)});
    }
  }
  return {1, "bound-corner attainment", worst <= 1e-12, fmt("max relative gap %.2e (tol 1e-12)", worst), 0, 1};
}

// --- 2: grid solver against the restricted region ----------------------------

CriterionResult grid_region(const AcceptanceOptions& opt) {
  const int n = opt.grid_n;
  std::vector<Complex> eps;
  for (Real v : {0.1, 0.2, 0.5, 2.0, 5.0, 10.0}) eps.emplace_back(v, 0.0);
  for (Real v : {0.1, 0.2, 0.5, 2.0, 5.0, 10.0}) eps.emplace_back(0.0, v);
  const std::vector<PixelInclusion> squares = {square_inclusion(2, n, 1.0 / 16), square_inclusion(2, n, 1.0 / 64)};
  const std::vector<PixelInclusion> disks = {disk_inclusion(2, n, 1.0 / 16), disk_inclusion(2, n, 1.0 / 64)};

  struct Row {
    Real square_violation = 0;  // -margin / scale, <= 1e-3 passes
    Real disk_error = 0;
  };
  std::vector<Row> rows(eps.size());
  auto extrapolated = [&](const std::vector<PixelInclusion>& shapes, Complex e) {
    std::vector<PolarizabilityEstimate> est;
    for (const auto& s : shapes) est.push_back(polarizability_tensor(s, e));
    return extrapolate_dilute(est).trace_average();
  };
  parallel_for(eps.size(), resolve_threads(opt.threads), [&](std::size_t i) {
    const Contrast c(eps[i] - 1.0, 2);
    const Complex sq = extrapolated(squares, eps[i]);
    const Complex dk = extrapolated(disks, eps[i]);
    const BoundRegion region = polarizability_region(c, RegionKind::milton);
    rows[i].square_violation = std::max(0.0, -region_margin(region, sq) / std::max(std::abs(sq), 1.0));
    rows[i].disk_error = rel_gap(dk, ball_polarizability(c.chi1, 2));
  });
  Real sq = 0, dk = 0;
  for (const auto& r : rows) {
    sq = std::max(sq, r.square_violation);
    dk = std::max(dk, r.disk_error);
  }
  return {2, "grid polarizabilities vs Milton region (n=" + std::to_string(n) + ")", sq <= 1e-3 && dk <= 0.02,
          fmt2("square max outside %.2e (tol 1e-3); disk max error %.3f%% (tol 2%%)", sq, 100 * dk), 0, 600};
}

// --- 3: Y-problem identities --------------------------------------------------

MatrixXc orthonormal_columns(const MatrixXc& m) {
  Eigen::HouseholderQR<MatrixXc> qr(m);
  return qr.householderQ() * MatrixXc::Identity(m.rows(), m.cols());
}

MatrixXc gaussian(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c) {
  std::normal_distribution<Real> g;
  MatrixXc m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

// Driving-point admittance by nodal analysis with the source's `to` node
// grounded and `from` held at unit potential.
Complex nodal_admittance(const NetworkSpec& spec) {
  const NetworkEdge& src = spec.edges[spec.source_edges().front()];
  MatrixXc g = MatrixXc::Zero(spec.nodes, spec.nodes);
  for (const auto& e : spec.edges) {
    if (e.kind != EdgeKind::impedance) continue;
    const Complex y = 1.0 / e.impedance;
    g(e.from, e.from) += y;
    g(e.to, e.to) += y;
    g(e.from, e.to) -= y;
    g(e.to, e.from) -= y;
  }
  std::vector<int> free_nodes;
  for (int k = 0; k < spec.nodes; ++k)
    if (k != src.from && k != src.to) free_nodes.push_back(k);
  VectorXc v = VectorXc::Zero(spec.nodes);
  v(src.from) = 1.0;
  const Eigen::Index u = static_cast<Eigen::Index>(free_nodes.size());
  if (u > 0) {
    MatrixXc guu(u, u);
    VectorXc rhs(u);
    for (Eigen::Index i = 0; i < u; ++i) {
      for (Eigen::Index j = 0; j < u; ++j) guu(i, j) = g(free_nodes[i], free_nodes[j]);
      rhs(i) = -g(free_nodes[i], src.from);
    }
    const VectorXc vu = guu.fullPivLu().solve(rhs);
    for (Eigen::Index i = 0; i < u; ++i) v(free_nodes[i]) = vu(i);
  }
  return (g * v)(src.from);
}

CriterionResult y_identities(const AcceptanceOptions& opt) {
  std::mt19937_64 rng(opt.seed + 3);
  Real worst_power = 0;  // residual / scale
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 4 + (trial * 60) / 49;
    const int re = std::uniform_int_distribution<int>(1, n - 1)(rng);
    const int rv = std::uniform_int_distribution<int>(1, std::min(re, n - re))(rng);
    const MatrixXc qe = orthonormal_columns(gaussian(rng, n, re));
    const MatrixXc full = orthonormal_columns(gaussian(rng, n, n));
    const MatrixXc qh = full.rightCols(n - rv);
    const YProblemInstance inst(qe, full.leftCols(rv), qh * gaussian(rng, n - rv, n - rv) * qh.adjoint());
    const VectorXc e1 = gaussian(rng, rv, 1);
    const YSolution s = solve_y(inst, e1);
    const Real scale = 1.0 + (s.e1.norm() + s.e2.norm()) * (s.j1.norm() + s.j2.norm());
    worst_power = std::max(worst_power, power_identity_residual(inst, e1) / scale);
  }

  auto net = [](int nodes, std::vector<NetworkEdge> edges) {
    NetworkSpec s;
    s.nodes = nodes;
    s.edges = std::move(edges);
    return s;
  };
  const auto src = [](int a, int b) { return NetworkEdge{a, b, EdgeKind::source, 0.0}; };
  const auto z = [](int a, int b, Complex v) { return NetworkEdge{a, b, EdgeKind::impedance, v}; };
  const std::vector<NetworkSpec> nets = {
      net(3, {src(0, 2), z(0, 1, 100.0), z(1, 2, Complex(50.0, 10.0))}),                    // divider
      net(2, {src(0, 1), z(0, 1, Complex(1.0, 2.0)), z(0, 1, Complex(4.0, -1.0))}),          // parallel pair
      net(4, {src(0, 3), z(0, 1, Complex(1.0, 0.5)), z(0, 2, 2.0), z(1, 3, Complex(3.0, -1.0)), z(2, 3, 1.5),
              z(1, 2, Complex(0.5, 2.0))}),                                                  // Wheatstone
  };
  Real worst_nodal = 0;
  for (const auto& spec : nets) {
    const YProblemInstance inst = network_to_instance(spec);
    const Complex y = extract_y_star(inst)(0, 0);
    const Complex oracle = nodal_admittance(spec);
    worst_nodal = std::max(worst_nodal, std::abs(y - oracle) / (1.0 + std::abs(oracle)));
    worst_power = std::max(worst_power, power_identity_residual(inst, VectorXc::Ones(1)) / (1.0 + std::abs(y)));
  }
  return {3, "Y-problem power identity and networks", worst_power < 1e-10 && worst_nodal <= 1e-12,
          fmt2("power residual/scale %.2e (tol 1e-10); network vs nodal %.2e (tol 1e-12)", worst_power, worst_nodal),
          0, 10};
}

// --- 4: discrete polarizability vs grid solver --------------------------------

CriterionResult discrete_equivalence(const AcceptanceOptions&) {
  const PixelInclusion disk = disk_inclusion_radius(2, 8, 2.0);
  Real worst = 0;
  GridSolveOptions tight;
  tight.tol = 1e-12;
  for (Complex eps1 : {Complex(3.0, 0.0), Complex(2.0, 1.5), Complex(0.2, 4.0), Complex(10.0, 0.0)}) {
    const MatrixXc alpha = discrete_polarizability(extract_y_star(dielectric_cell_instance(disk, eps1)), eps1, 1.0);
    const MatrixXc grid = polarizability_tensor(disk, eps1, tight).alpha_over_volume;
    worst = std::max(worst, (alpha - grid).cwiseAbs().maxCoeff());
  }
  return {4, "discrete polarizability equals grid solve (8x8 disk)", worst <= 1e-8,
          fmt("max entrywise gap %.2e (tol 1e-8)", worst), 0, 30};
}

// --- 5, 6, 10: acoustic sphere identities -------------------------------------

AcousticMedia media(Complex rho1, Complex kappa1) {
  AcousticMedia m;
  m.rho1 = rho1;
  m.kappa1 = kappa1;
  return m;
}

CriterionResult optical_theorem(const AcceptanceOptions&) {
  Real worst = 0;
  for (Real k0a : {0.5, 1.0, 2.0, 5.0}) {
    const auto sol = solve_sphere(media(1.3 * Complex(1.0, 0.05), Complex(1.5, -0.2)), PlaneWave{}, k0a);
    worst = std::max(worst, optical_theorem_residual(sol).residual);
  }
  return {5, "optical theorem, three routes", worst < 1e-6, fmt("max residual %.2e (tol 1e-6)", worst), 0, 60};
}

Vector3r random_direction(std::mt19937_64& rng) {
  std::normal_distribution<Real> g;
  Vector3r v(g(rng), g(rng), g(rng));
  return v.normalized();
}

CriterionResult bilinear(const AcceptanceOptions& opt) {
  std::mt19937_64 rng(opt.seed + 6);
  std::uniform_real_distribution<Real> part(0.5, 2.0), loss(0.0, 0.5), size(0.2, 5.0);
  Real worst = 0;
  for (int k = 0; k < 10; ++k) {
    const Complex rho1(part(rng), loss(rng)), kappa1(part(rng), -loss(rng));
    const PlaneWave wave{Complex(1.0, 0.0), random_direction(rng)};
    const auto sol = solve_sphere(media(rho1, kappa1), wave, size(rng));
    worst = std::max(worst, scattering_bilinear(sol, random_direction(rng)).relative_gap);
  }
  return {6, "far-field / volume bilinear identity", worst < 1e-6, fmt("max relative gap %.2e (tol 1e-6)", worst),
          0, 120};
}

CriterionResult unitarity(const AcceptanceOptions&) {
  Real worst = 0;
  for (Real k0a : {1.0, 5.0})
    for (Complex rho1 : {Complex(2.5), Complex(0.4)})
      for (Complex kappa1 : {Complex(0.6), Complex(3.0)}) {
        const auto sol = solve_sphere(media(rho1, kappa1), PlaneWave{}, k0a);
        for (int l = 0; l <= sol.l_max; ++l) worst = std::max(worst, std::abs(std::abs(1.0 + 2.0 * sol.A(l)) - 1.0));
      }
  return {10, "lossless unitarity", worst <= 1e-10, fmt("max | |1+2A_l| - 1 | %.2e (tol 1e-10)", worst), 0, 5};
}

// --- 7, 8: backscatter sweep --------------------------------------------------

struct SweepPoint {
  Real k0a;
  Complex rho1, kappa1;
};

// 5 sizes x 5 modulus losses x 5 density real parts; the density loss tracks
// the modulus loss so both stay in their ranges.
std::vector<SweepPoint> backscatter_sweep() {
  std::vector<SweepPoint> pts;
  for (Real k0a : {0.2, 0.5, 1.0, 2.0, 5.0})
    for (Real loss : {0.01, 0.03, 0.1, 0.25, 0.5})
      for (Real rho_re : {0.5, 0.75, 1.0, 1.5, 2.0}) pts.push_back({k0a, Complex(rho_re, loss), Complex(1.2, -loss)});
  return pts;
}

CriterionResult backscatter(const AcceptanceOptions& opt) {
  const auto pts = backscatter_sweep();
  std::vector<Real> margins(pts.size());
  parallel_for(pts.size(), resolve_threads(opt.threads), [&](std::size_t i) {
    margins[i] = backscatter_bound(solve_sphere(media(pts[i].rho1, pts[i].kappa1), PlaneWave{}, pts[i].k0a)).margin;
  });
  const int violations = static_cast<int>(std::count_if(margins.begin(), margins.end(), [](Real m) { return !(m >= 0.0); }));
  const Real min_margin = *std::min_element(margins.begin(), margins.end());

  // Matched density, kappa1 = kappa0 (1 - 0.1i): the bound is exactly 0.1.
  int matched_violations = 0;
  Real matched_max = 0;
  for (int k = 1; k <= 100; ++k) {
    const auto b = backscatter_bound(solve_sphere(media(1.0, Complex(1.0, -0.1)), PlaneWave{}, 0.05 * k));
    if (!(std::abs(b.rhs_86 - 0.1) <= 1e-14) || !(b.lhs <= b.rhs_86)) ++matched_violations;
    matched_max = std::max(matched_max, b.lhs);
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "%d/%zu violations, min margin %.3e; matched case max |z| %.5f <= 0.1 (%d violations)",
                violations, pts.size(), min_margin, matched_max, matched_violations);
  return {7, "backscatter bound sweep", violations == 0 && matched_violations == 0, buf, 0, 300};
}

CriterionResult wrap_region(const AcceptanceOptions& opt) {
  const auto pts = backscatter_sweep();
  std::vector<Real> margins(pts.size());
  parallel_for(pts.size(), resolve_threads(opt.threads), [&](std::size_t i) {
    const WrapRegion w = wrap_around_region(solve_sphere(media(pts[i].rho1, pts[i].kappa1), PlaneWave{}, pts[i].k0a), 16);
    margins[i] = w.bounded ? w.margin : -std::numeric_limits<Real>::infinity();
  });
  const int outside = static_cast<int>(std::count_if(margins.begin(), margins.end(), [](Real m) { return !(m > 0.0); }));
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d/%zu not strictly interior, min margin %.3e", outside, pts.size(),
                *std::min_element(margins.begin(), margins.end()));
  return {8, "wrap-around region (16 half-planes)", outside == 0, buf, 0, 300};
}

// --- 9: oscillatory endpoint asymptotics --------------------------------------

CriterionResult oscillatory(const AcceptanceOptions&) {
  // Phase g(t) = 2 - 2t. Sampling r on pi/8 + m pi/2 pins exp(4ir) = i, so the
  // two endpoint contributions to the 1/r error neither beat against each
  // other nor cancel (they would at exp(4ir) = -1 when f'(1) = -f'(-1)).
  const Real slope = -2.0, offset = 2.0;
  const std::vector<std::function<Complex(Real)>> fs = {
      [](Real t) { return Complex(1.0 + t); },
      [](Real t) { return Complex((1.0 + t) * (1.0 + t)); },
      [](Real t) { return Complex(std::cos(t), t * t); },
  };
  std::vector<Real> slopes;
  for (const auto& f : fs) {
    std::vector<Real> lx, ly;
    for (int m : {4, 8, 16, 32, 64, 128, 256, 512, 1024}) {
      const Real r = kPi / 8 + m * kPi / 2;
      const Real err = std::abs(oscillatory_integral(f, slope, offset, r) - oscillatory_asymptotic(f, slope, offset, r));
      lx.push_back(std::log(r));
      ly.push_back(std::log(err));
    }
    const Real n = Real(lx.size());
    Real sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sx += lx[i];
      sy += ly[i];
      sxx += lx[i] * lx[i];
      sxy += lx[i] * ly[i];
    }
    slopes.push_back((n * sxy - sx * sy) / (n * sxx - sx * sx));
  }
  bool ok = true;
  for (Real s : slopes) ok = ok && s >= -1.3 && s <= -0.7;
  char buf[160];
  std::snprintf(buf, sizeof buf, "log-log slopes %.3f, %.3f, %.3f (range [-1.3, -0.7])", slopes[0], slopes[1], slopes[2]);
  return {9, "oscillatory endpoint asymptotics", ok, buf, 0, 10};
}

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
  using Fn = CriterionResult (*)(const AcceptanceOptions&);
  static const Fn table[kCriterionCount] = {corners,    grid_region, y_identities, discrete_equivalence, optical_theorem,
                                            bilinear,   backscatter, wrap_region,  oscillatory,          unitarity};
  if (id < 1 || id > kCriterionCount) throw DomainError("acceptance criterion id must be in 1..10");
  const auto start = Clock::now();
  CriterionResult r;
  try {
    r = table[id - 1](options);
  } catch (const std::exception& e) {
    r.id = id;
    r.name = "criterion " + std::to_string(id);
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (r.time_limit > 0 && r.seconds > r.time_limit) {
    r.passed = false;
    r.detail += fmt2(" [runtime %.1f s over limit %.0f s]", r.seconds, r.time_limit);
  }
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    out.push_back(run_criterion(id, options));
    if (on_result) on_result(out.back());
  }
  return out;
}

}  // namespace wavebound
