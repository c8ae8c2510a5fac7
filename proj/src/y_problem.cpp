#include <wavebound/y_problem.hpp>

#include <Eigen/LU>
#include <Eigen/QR>

#include <cmath>

namespace wavebound {

namespace {

constexpr Real kOrthoTol = 1e-12;
constexpr Real kRcondFloor = 1e-12;

void check_orthonormal(const MatrixXc& q, const char* name) {
  const Eigen::Index k = q.cols();
  if (k == 0) return;
  const Real err = (q.adjoint() * q - MatrixXc::Identity(k, k)).cwiseAbs().maxCoeff();
  if (err > kOrthoTol * std::sqrt(Real(k)))
    throw DomainError(std::string("Y-problem: ") + name + " basis is not orthonormal");
}

// Orthonormal basis of the orthogonal complement of range(q) (q orthonormal).
MatrixXc complement(const MatrixXc& q, Eigen::Index n) {
  if (q.cols() == 0) return MatrixXc::Identity(n, n);
  Eigen::HouseholderQR<MatrixXc> qr(q);
  const MatrixXc full = qr.householderQ() * MatrixXc::Identity(n, n);
  return full.rightCols(n - q.cols());
}

struct Factored {
  Eigen::PartialPivLU<MatrixXc> lu;
  Eigen::Index nh = 0;
  Eigen::Index nv = 0;
};

Factored factor(const YProblemInstance& inst) {
  const MatrixXc& QE = inst.basis_E();
  const MatrixXc& QJ = inst.basis_J();
  const MatrixXc& QV = inst.basis_V();
  const MatrixXc& QH = inst.basis_H();
  const Eigen::Index n = inst.ambient_dim();
  Factored f;
  f.nh = QH.cols();
  f.nv = QV.cols();
  // Unknowns: e2 = QH a, j1 = QV b.
  // Rows: QJ^*(e1 + e2) = 0 and QE^*(j1 + L e2) = 0.
  MatrixXc a(n, n);
  a.topLeftCorner(QJ.cols(), f.nh) = QJ.adjoint() * QH;
  a.topRightCorner(QJ.cols(), f.nv).setZero();
  a.bottomLeftCorner(QE.cols(), f.nh) = QE.adjoint() * (inst.operator_L() * QH);
  a.bottomRightCorner(QE.cols(), f.nv) = QE.adjoint() * QV;
  f.lu.compute(a);
  const Real rc = f.lu.rcond();
  if (!(rc > kRcondFloor))
    throw SingularError("Y-problem: system is singular or ill-conditioned (fields not uniquely determined)",
                        "Y-problem uniqueness");
  return f;
}

// Solves for a batch of e1 coordinate columns; returns (a; b) stacked.
MatrixXc solve_batch(const YProblemInstance& inst, const Factored& f, const MatrixXc& e1_coords) {
  const MatrixXc& QJ = inst.basis_J();
  MatrixXc rhs = MatrixXc::Zero(inst.ambient_dim(), e1_coords.cols());
  rhs.topRows(QJ.cols()) = -(QJ.adjoint() * (inst.basis_V() * e1_coords));
  return f.lu.solve(rhs);
}

}  // namespace

YProblemInstance::YProblemInstance(MatrixXc basis_E, MatrixXc basis_V, MatrixXc operator_L)
    : QE_(std::move(basis_E)), QV_(std::move(basis_V)), L_(std::move(operator_L)) {
  const Eigen::Index n = L_.rows();
  if (L_.cols() != n || QE_.rows() != n || QV_.rows() != n)
    throw DomainError("Y-problem: bases and operator must share the ambient dimension");
  if (QE_.cols() > n || QV_.cols() > n) throw DomainError("Y-problem: basis has too many columns");
  check_orthonormal(QE_, "E");
  check_orthonormal(QV_, "V");
  QJ_ = complement(QE_, n);
  QH_ = complement(QV_, n);
  // L must map H into H.
  const MatrixXc leak = QV_.adjoint() * (L_ * QH_);
  const Real lnorm = std::max<Real>(1.0, L_.cwiseAbs().maxCoeff());
  if (leak.size() > 0 && leak.cwiseAbs().maxCoeff() > 1e-12 * lnorm * std::sqrt(Real(n)))
    throw DomainError("Y-problem: operator L does not preserve H");
}

YSolution solve_y(const YProblemInstance& inst, const VectorXc& e1_coords) {
  if (e1_coords.size() != inst.basis_V().cols()) throw DomainError("solve_y: e1 has the wrong dimension");
  const Factored f = factor(inst);
  const VectorXc x = solve_batch(inst, f, e1_coords);
  YSolution s;
  s.e1 = inst.basis_V() * e1_coords;
  s.e2 = inst.basis_H() * x.head(f.nh);
  s.j1 = inst.basis_V() * x.tail(f.nv);
  s.j2 = inst.operator_L() * s.e2;
  const VectorXc e = s.e1 + s.e2, j = s.j1 + s.j2;
  s.residual_E = (inst.basis_J().adjoint() * e).norm();
  s.residual_J = (inst.basis_E().adjoint() * j).norm();
  return s;
}

MatrixXc extract_y_star(const YProblemInstance& inst) {
  const Factored f = factor(inst);
  const MatrixXc x = solve_batch(inst, f, MatrixXc::Identity(f.nv, f.nv));
  return -x.bottomRows(f.nv);
}

Real power_identity_residual(const YProblemInstance& inst, const VectorXc& e1_coords) {
  const YSolution s = solve_y(inst, e1_coords);
  const MatrixXc y = extract_y_star(inst);
  const Complex lhs = e1_coords.dot(y * e1_coords);
  const Complex rhs = s.e2.dot(s.j2);
  return std::abs(lhs - rhs);
}

MatrixXc discrete_polarizability(const MatrixXc& y_star, Complex eps1, Complex eps0, Real volume) {
  const Eigen::Index k = y_star.rows();
  if (y_star.cols() != k) throw DomainError("discrete_polarizability: Y* must be square");
  const Complex c = eps1 - eps0;
  const MatrixXc shifted = y_star + eps1 * MatrixXc::Identity(k, k);
  Eigen::PartialPivLU<MatrixXc> lu(shifted);
  if (!(lu.rcond() > kRcondFloor))
    throw SingularError("discrete_polarizability: Y* + eps1 is singular", "polarizability from Y*");
  return volume * (c * MatrixXc::Identity(k, k) - c * c * lu.inverse());
}

YProblemInstance dielectric_cell_instance(const PixelInclusion& inclusion, Complex eps1) {
  inclusion.validate();
  const int d = inclusion.dim;
  const int n = inclusion.n;
  const Eigen::Index N = inclusion.points();
  if (d * N > 4096) throw DomainError("dielectric_cell_instance: dense instance limited to d*N <= 4096");

  // Unitary 1-D DFT, Kronecker-expanded to d axes (last axis fastest).
  MatrixXc f1(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) f1(j, k) = std::polar(1.0 / std::sqrt(Real(n)), -2.0 * kPi * j * k / n);
  MatrixXc f = f1;
  for (int a = 1; a < d; ++a) {
    MatrixXc next(f.rows() * n, f.cols() * n);
    for (Eigen::Index i = 0; i < f.rows(); ++i)
      for (Eigen::Index j = 0; j < f.cols(); ++j) next.block(i * n, j * n, n, n) = f(i, j) * f1;
    f = next;
  }
  auto freq = [n](Eigen::Index m) { return Real(m < n / 2 ? m : m - n); };

  // Symbol of the projection, one d x d block per frequency.
  MatrixXc pi_e = MatrixXc::Zero(d * N, d * N);
  const MatrixXc fh = f.adjoint();
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      VectorXc symbol(N);
      for (Eigen::Index idx = 0; idx < N; ++idx) {
        Real k[3] = {0, 0, 0};
        Eigen::Index rest = idx;
        for (int ax = d - 1; ax >= 0; --ax) {
          k[ax] = freq(rest % n);
          rest /= n;
        }
        Real k2 = 0;
        for (int ax = 0; ax < d; ++ax) k2 += k[ax] * k[ax];
        symbol(idx) = k2 == 0.0 ? 0.0 : k[a] * k[b] / k2;
      }
      pi_e.block(a * N, b * N, N, N) = fh * symbol.asDiagonal() * f;
    }
  pi_e = 0.5 * (pi_e + pi_e.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<MatrixXc> eig(pi_e);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i)
    if (eig.eigenvalues()(i) > 0.5) keep.push_back(i);
  MatrixXc qe(d * N, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) qe.col(c) = eig.eigenvectors().col(keep[c]);

  const Real scale = 1.0 / std::sqrt(Real(inclusion.count()));
  MatrixXc qv = MatrixXc::Zero(d * N, d);
  VectorXc eps_diag(d * N);
  for (int a = 0; a < d; ++a)
    for (Eigen::Index idx = 0; idx < N; ++idx) {
      const bool in = inclusion.mask[idx] != 0;
      if (in) qv(a * N + idx, a) = scale;
      eps_diag(a * N + idx) = in ? eps1 : Complex(1.0);
    }
  return YProblemInstance(std::move(qe), std::move(qv), eps_diag.asDiagonal());
}

}  // namespace wavebound
