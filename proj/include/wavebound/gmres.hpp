#pragma once

#include <wavebound/types.hpp>

#include <cmath>
#include <vector>

namespace wavebound {

struct GmresResult {
  bool converged = false;
  int iterations = 0;
  Real residual = 0;  // relative, ||b - A x|| / ||b||
  std::vector<Real> history;
};

/// Restarted GMRES with Givens rotations for a complex operator given as a
/// callable `apply(const VectorXc&) -> VectorXc`. `x` holds the initial guess
/// on entry and the solution on exit.
template <typename Op>
GmresResult gmres(const Op& apply, const VectorXc& b, VectorXc& x, Real tol, int restart, int max_iter) {
  GmresResult out;
  const Real bnorm = b.norm();
  if (bnorm == 0.0) {
    x.setZero(b.size());
    out.converged = true;
    return out;
  }
  if (x.size() != b.size()) x.setZero(b.size());

  const int m = restart;
  std::vector<VectorXc> basis;
  MatrixXc h(m + 1, m);
  VectorXc g(m + 1);
  std::vector<Real> cs(m);
  std::vector<Complex> sn(m);

  while (out.iterations < max_iter) {
    VectorXc r = b - apply(x);
    Real beta = r.norm();
    out.residual = beta / bnorm;
    if (out.history.empty()) out.history.push_back(out.residual);
    if (out.residual < tol) {
      out.converged = true;
      return out;
    }
    basis.assign(1, r / beta);
    h.setZero();
    g.setZero();
    g(0) = beta;

    int k = 0;
    for (; k < m && out.iterations < max_iter; ++k) {
      VectorXc w = apply(basis[k]);
      // Modified Gram-Schmidt, two passes for stability.
      for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i <= k; ++i) {
          const Complex hij = basis[i].dot(w);
          h(i, k) += hij;
          w -= hij * basis[i];
        }
      const Real wn = w.norm();
      h(k + 1, k) = wn;
      for (int i = 0; i < k; ++i) {
        const Complex t = cs[i] * h(i, k) + sn[i] * h(i + 1, k);
        h(i + 1, k) = -std::conj(sn[i]) * h(i, k) + cs[i] * h(i + 1, k);
        h(i, k) = t;
      }
      const Complex h1 = h(k, k);
      const Real rho = std::hypot(std::abs(h1), wn);
      if (std::abs(h1) == 0.0) {
        cs[k] = 0.0;
        sn[k] = 1.0;
      } else {
        cs[k] = std::abs(h1) / rho;
        sn[k] = (h1 / std::abs(h1)) * wn / rho;
      }
      h(k, k) = cs[k] * h1 + sn[k] * Complex(wn);
      h(k + 1, k) = 0.0;
      g(k + 1) = -std::conj(sn[k]) * g(k);
      g(k) = cs[k] * g(k);
      ++out.iterations;
      out.residual = std::abs(g(k + 1)) / bnorm;
      out.history.push_back(out.residual);
      if (out.residual < tol || wn == 0.0) {
        ++k;
        break;
      }
      basis.push_back(w / wn);
    }
    // Back-substitute the k x k triangular system and update x.
    VectorXc y = h.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
    for (int i = 0; i < k; ++i) x += y(i) * basis[i];
    if (out.residual < tol) {
      // Confirm against the true residual before declaring convergence.
      out.residual = (b - apply(x)).norm() / bnorm;
      out.history.back() = out.residual;
      if (out.residual < tol) {
        out.converged = true;
        return out;
      }
    }
  }
  return out;
}

}  // namespace wavebound
