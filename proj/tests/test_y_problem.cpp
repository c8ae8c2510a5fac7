#include <catch_amalgamated.hpp>

#include <wavebound/grid.hpp>
#include <wavebound/y_problem.hpp>

#include <random>

using namespace wavebound;

namespace {

MatrixXc orthonormal(MatrixXc m) {
  Eigen::HouseholderQR<MatrixXc> qr(m);
  return qr.householderQ() * MatrixXc::Identity(m.rows(), m.cols());
}

MatrixXc random_matrix(std::mt19937& rng, Eigen::Index r, Eigen::Index c) {
  std::normal_distribution<double> g;
  MatrixXc m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

// L = Q_H M Q_H^* maps H into H and vanishes on V.
YProblemInstance random_instance(std::mt19937& rng, int n, const MatrixXc& core_override = MatrixXc()) {
  // Well-posedness needs dim V <= min(dim E, dim J).
  const int re = std::uniform_int_distribution<int>(1, n - 1)(rng);
  const int rv = std::uniform_int_distribution<int>(1, std::min(re, n - re))(rng);
  const MatrixXc qe = orthonormal(random_matrix(rng, n, re));
  const MatrixXc full = orthonormal(random_matrix(rng, n, n));
  const MatrixXc qv = full.leftCols(rv), qh = full.rightCols(n - rv);
  const MatrixXc core = core_override.size() ? core_override.topLeftCorner(n - rv, n - rv) : random_matrix(rng, n - rv, n - rv);
  return YProblemInstance(qe, qv, qh * core * qh.adjoint());
}

// Driving-point admittance of a single-source network by nodal analysis:
// ground the source's `to` node, hold `from` at 1 V.
Complex nodal_admittance(const NetworkSpec& spec, std::vector<Complex>* edge_currents = nullptr) {
  const auto src = spec.edges[spec.source_edges().front()];
  const int n = spec.nodes;
  MatrixXc g = MatrixXc::Zero(n, n);
  for (const auto& e : spec.edges) {
    if (e.kind != EdgeKind::impedance) continue;
    const Complex y = 1.0 / e.impedance;
    g(e.from, e.from) += y;
    g(e.to, e.to) += y;
    g(e.from, e.to) -= y;
    g(e.to, e.from) -= y;
  }
  std::vector<int> unknown;
  for (int k = 0; k < n; ++k)
    if (k != src.from && k != src.to) unknown.push_back(k);
  VectorXc v = VectorXc::Zero(n);
  v(src.from) = 1.0;
  if (!unknown.empty()) {
    const Eigen::Index u = static_cast<Eigen::Index>(unknown.size());
    MatrixXc guu(u, u);
    VectorXc rhs(u);
    for (Eigen::Index i = 0; i < u; ++i) {
      for (Eigen::Index j = 0; j < u; ++j) guu(i, j) = g(unknown[i], unknown[j]);
      rhs(i) = -g(unknown[i], src.from);
    }
    const VectorXc vu = guu.fullPivLu().solve(rhs);
    for (Eigen::Index i = 0; i < u; ++i) v(unknown[i]) = vu(i);
  }
  Complex total = 0.0;
  for (const auto& e : spec.edges) {
    if (e.kind != EdgeKind::impedance) continue;
    const Complex i = (v(e.from) - v(e.to)) / e.impedance;
    if (edge_currents) edge_currents->push_back(i);
    if (e.from == src.from) total += i;
    if (e.to == src.from) total -= i;
  }
  return total;
}

NetworkSpec make_network(int nodes, std::vector<NetworkEdge> edges) {
  NetworkSpec s;
  s.nodes = nodes;
  s.edges = std::move(edges);
  return s;
}

NetworkEdge source(int a, int b) { return {a, b, EdgeKind::source, 0.0}; }
NetworkEdge imp(int a, int b, Complex z) { return {a, b, EdgeKind::impedance, z}; }

}  // namespace

TEST_CASE("hand-solved networks") {
  const Complex z1(2.0, 1.0), z2(3.0, -0.5);
  const MatrixXc loop = extract_y_star(network_to_instance(make_network(2, {source(0, 1), imp(0, 1, z1)})));
  CHECK(std::abs(loop(0, 0) - 1.0 / z1) < 1e-12);
  const MatrixXc parallel =
      extract_y_star(network_to_instance(make_network(2, {source(0, 1), imp(0, 1, z1), imp(1, 0, z2)})));
  CHECK(std::abs(parallel(0, 0) - (1.0 / z1 + 1.0 / z2)) < 1e-12);
  const MatrixXc series =
      extract_y_star(network_to_instance(make_network(3, {source(0, 2), imp(0, 1, z1), imp(1, 2, z2)})));
  CHECK(std::abs(series(0, 0) - 1.0 / (z1 + z2)) < 1e-12);
}

TEST_CASE("networks agree with nodal analysis, and the power identity holds edge by edge") {
  const std::vector<NetworkSpec> nets = {
      make_network(3, {source(0, 2), imp(0, 1, 100.0), imp(1, 2, 50.0)}),
      make_network(2, {source(0, 1), imp(0, 1, Complex(1.0, 2.0)), imp(0, 1, Complex(4.0, -1.0))}),
      make_network(4, {source(0, 3), imp(0, 1, Complex(1.0, 0.5)), imp(0, 2, 2.0), imp(1, 3, Complex(3.0, -1.0)),
                       imp(2, 3, 1.5), imp(1, 2, Complex(0.5, 2.0))}),
  };
  for (const auto& net : nets) {
    std::vector<Complex> currents;
    const Complex oracle = nodal_admittance(net, &currents);
    const YProblemInstance inst = network_to_instance(net);
    const MatrixXc y = extract_y_star(inst);
    CHECK(std::abs(y(0, 0) - oracle) <= 1e-12 * (1.0 + std::abs(oracle)));
    const VectorXc e1 = VectorXc::Ones(1);
    CHECK(power_identity_residual(inst, e1) < 1e-10 * (1.0 + std::abs(y(0, 0))));
    double dissipated = 0;
    std::size_t k = 0;
    for (const auto& e : net.edges)
      if (e.kind == EdgeKind::impedance) dissipated += std::norm(currents[k++]) * e.impedance.real();
    CHECK(std::abs(y(0, 0).real() - dissipated) < 1e-12 * (1.0 + dissipated));
  }
}

TEST_CASE("network validation") {
  CHECK_THROWS_AS(network_to_instance(make_network(3, {source(0, 1), imp(0, 1, 1.0)})), DomainError);
  CHECK_THROWS_AS(network_to_instance(make_network(2, {imp(0, 1, 1.0)})), DomainError);
  CHECK_THROWS_AS(network_from_json(R"({"nodes": 2, "edges": [], "extra": 1})"), DomainError);
  CHECK_THROWS_AS(network_from_json(R"({"nodes": 2, "edges": [{"from": 0, "to": 1, "kind": "source", "impedance": 1}]})"),
                  DomainError);
  const NetworkSpec s = network_from_json(
      R"({"nodes": 2, "edges": [{"from": 0, "to": 1, "kind": "source"}, {"from": 0, "to": 1, "kind": "impedance", "impedance": [2, 1]}]})");
  CHECK(s.edges[1].impedance == Complex(2.0, 1.0));
}

TEST_CASE("random instances satisfy the field constraints and the power identity") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 4 + (trial * 60) / 49;
    const YProblemInstance inst = random_instance(rng, n);
    const VectorXc e1 = random_matrix(rng, inst.basis_V().cols(), 1);
    const YSolution s = solve_y(inst, e1);
    const double scale = 1.0 + s.e1.norm() + s.e2.norm() + s.j1.norm() + s.j2.norm();
    CHECK(s.residual_E < 1e-10 * scale);
    CHECK(s.residual_J < 1e-10 * scale);
    CHECK((s.j2 - inst.operator_L() * s.e2).norm() < 1e-12 * scale);
    const MatrixXc y = extract_y_star(inst);
    CHECK(power_identity_residual(inst, e1) < 1e-10 * (1.0 + std::abs(e1.dot(y * e1))));
    // j1 = -Y* e1 in V coordinates.
    CHECK((inst.basis_V().adjoint() * s.j1 + y * e1).norm() < 1e-10 * scale);
  }
}

TEST_CASE("decoupled case: V inside E gives Y* = 0") {
  std::mt19937 rng(2);
  const int n = 6;
  const MatrixXc full = orthonormal(random_matrix(rng, n, n));
  const MatrixXc qv = full.leftCols(1), qh = full.rightCols(n - 1);
  const MatrixXc qe = full.leftCols(3);
  const YProblemInstance inst(qe, qv, qh * (MatrixXc::Identity(n - 1, n - 1) * 2.0) * qh.adjoint());
  const YSolution s = solve_y(inst, VectorXc::Ones(1));
  CHECK(s.e2.norm() < 1e-12);
  CHECK(s.j1.norm() < 1e-12);
  CHECK(extract_y_star(inst).norm() < 1e-12);
}

TEST_CASE("sign properties of Y*") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 10 + trial;
    // Scalar L = lambda Pi_H.
    const MatrixXc full = orthonormal(random_matrix(rng, n, n));
    const MatrixXc qv = full.leftCols(3), qh = full.rightCols(n - 3);
    const MatrixXc qe = orthonormal(random_matrix(rng, n, n / 2));
    const MatrixXc y_scalar = extract_y_star(YProblemInstance(qe, qv, 1.7 * qh * qh.adjoint()));
    CHECK((y_scalar - y_scalar.adjoint()).norm() < 1e-10);
    CHECK(Eigen::SelfAdjointEigenSolver<MatrixXc>(y_scalar).eigenvalues().minCoeff() > -1e-10);

    // Real SPD L with real bases: Y* real symmetric PSD.
    MatrixXr a = MatrixXr::Random(n, n);
    const MatrixXr fr = Eigen::HouseholderQR<MatrixXr>(MatrixXr::Random(n, n)).householderQ();
    const MatrixXr er = Eigen::HouseholderQR<MatrixXr>(MatrixXr::Random(n, n / 2)).householderQ() *
                        MatrixXr::Identity(n, n / 2);
    const MatrixXr qhr = fr.rightCols(n - 2);
    const MatrixXr core = a.topLeftCorner(n - 2, n - 2) * a.topLeftCorner(n - 2, n - 2).transpose() +
                          0.1 * MatrixXr::Identity(n - 2, n - 2);
    const MatrixXc y_real = extract_y_star(YProblemInstance(er.cast<Complex>(), fr.leftCols(2).cast<Complex>(),
                                                            (qhr * core * qhr.transpose()).cast<Complex>()));
    CHECK(y_real.imag().norm() < 1e-10);
    CHECK((y_real - y_real.transpose()).norm() < 1e-10 * (1.0 + y_real.norm()));
    CHECK(Eigen::SelfAdjointEigenSolver<MatrixXc>(y_real).eigenvalues().minCoeff() > -1e-10);

    // Im L >= 0 on H gives Im <e1, Y* e1> >= 0.
    const MatrixXc b = random_matrix(rng, n - 3, n - 3);
    const MatrixXc lossy = random_matrix(rng, n - 3, n - 3) + Complex(0.0, 1.0) * (b * b.adjoint());
    const MatrixXc herm_re = 0.5 * (lossy + lossy.adjoint());
    const MatrixXc core_l = herm_re + Complex(0.0, 1.0) * (b * b.adjoint());
    const MatrixXc y = extract_y_star(YProblemInstance(qe, qv, qh * core_l * qh.adjoint()));
    for (int k = 0; k < 5; ++k) {
      const VectorXc e1 = random_matrix(rng, 3, 1);
      CHECK(e1.dot(y * e1).imag() > -1e-10);
    }
  }
}

TEST_CASE("discrete polarizability: limits and basis covariance") {
  std::mt19937 rng(29);
  const MatrixXc y = random_matrix(rng, 3, 3);
  const Complex eps1(2.0, 0.5);
  CHECK(discrete_polarizability(y, eps1, eps1).norm() == 0.0);
  const MatrixXc big = discrete_polarizability(1e6 * y, eps1, 1.0);
  CHECK((big - (eps1 - 1.0) * MatrixXc::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-5 * std::abs(eps1 - 1.0));
  CHECK((discrete_polarizability(y, eps1, 1.0, 2.5) - 2.5 * discrete_polarizability(y, eps1, 1.0)).norm() < 1e-12);

  const MatrixXc u = orthonormal(random_matrix(rng, 3, 3));
  const MatrixXc a = discrete_polarizability(y, eps1, 1.0);
  const MatrixXc rotated = discrete_polarizability(u.adjoint() * y * u, eps1, 1.0);
  CHECK((rotated - u.adjoint() * a * u).norm() < 1e-12 * (1.0 + a.norm()));

  // Re-orthonormalizing basis_V transforms Y* by the same unitary.
  const YProblemInstance inst = random_instance(rng, 12);
  const Eigen::Index k = inst.basis_V().cols();
  const MatrixXc w = orthonormal(random_matrix(rng, k, k));
  const YProblemInstance inst2(inst.basis_E(), inst.basis_V() * w, inst.operator_L());
  CHECK((extract_y_star(inst2) - w.adjoint() * extract_y_star(inst) * w).norm() < 1e-10);
}

TEST_CASE("8x8 disk: Y-problem polarizability equals the grid solver") {
  const PixelInclusion disk = disk_inclusion_radius(2, 8, 2.0);
  REQUIRE(disk.count() == 12);
  for (Complex eps1 : {Complex(3.0, 0.0), Complex(2.0, 1.5), Complex(0.2, 4.0)}) {
    const MatrixXc y = extract_y_star(dielectric_cell_instance(disk, eps1));
    const MatrixXc alpha = discrete_polarizability(y, eps1, 1.0);
    GridSolveOptions opt;
    opt.tol = 1e-12;
    const PolarizabilityEstimate grid = polarizability_tensor(disk, eps1, opt);
    CHECK((alpha - grid.alpha_over_volume).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("Y-problem input validation") {
  const MatrixXc not_ortho = MatrixXc::Ones(4, 1);
  CHECK_THROWS_AS(YProblemInstance(not_ortho, MatrixXc::Identity(4, 1), MatrixXc::Identity(4, 4)), DomainError);
  // L leaking from H into V.
  MatrixXc leak = MatrixXc::Zero(4, 4);
  leak(0, 1) = 1.0;
  CHECK_THROWS_AS(YProblemInstance(MatrixXc::Identity(4, 2), MatrixXc::Identity(4, 1), leak), DomainError);
  // dim V > dim E: e1 cannot be completed into E.
  CHECK_THROWS_AS(extract_y_star(YProblemInstance(MatrixXc::Identity(4, 4).rightCols(1), MatrixXc::Identity(4, 2),
                                                  MatrixXc::Identity(4, 4).rightCols(2) *
                                                      MatrixXc::Identity(4, 4).rightCols(2).adjoint())),
                  SingularError);
  // L = 0 on H leaves the fields undetermined.
  CHECK_THROWS_AS(extract_y_star(YProblemInstance(MatrixXc::Identity(4, 2).rightCols(1),
                                                  MatrixXc::Identity(4, 1), MatrixXc::Zero(4, 4))),
                  SingularError);
}
