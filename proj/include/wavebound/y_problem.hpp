#pragma once

#include <wavebound/grid.hpp>
#include <wavebound/types.hpp>

#include <string>
#include <vector>

namespace wavebound {

/// Finite-dimensional Y-problem: K = E (+) J = V (+) H with L acting on H.
/// Bases are stored with orthonormal columns; the complements J and H are
/// completed at construction.
class YProblemInstance {
 public:
  YProblemInstance(MatrixXc basis_E, MatrixXc basis_V, MatrixXc operator_L);

  Eigen::Index ambient_dim() const { return L_.rows(); }
  const MatrixXc& basis_E() const { return QE_; }
  const MatrixXc& basis_J() const { return QJ_; }
  const MatrixXc& basis_V() const { return QV_; }
  const MatrixXc& basis_H() const { return QH_; }
  const MatrixXc& operator_L() const { return L_; }

 private:
  MatrixXc QE_, QJ_, QV_, QH_, L_;
};

struct YSolution {
  VectorXc e1, j1, e2, j2;  // ambient coordinates
  Real residual_E = 0;      // ||(I - P_E)(e1 + e2)||
  Real residual_J = 0;      // ||P_E (j1 + j2)||
};

/// e1 is given by its coordinates in basis_V. Throws SingularError when the
/// system's reciprocal condition estimate falls below 1e-12.
YSolution solve_y(const YProblemInstance& instance, const VectorXc& e1_coords);

/// Y* in basis_V coordinates: column k is -j1 (in basis_V coordinates) for e1
/// equal to the k-th basis vector.
MatrixXc extract_y_star(const YProblemInstance& instance);

/// |<e1, Y* e1> - <e2, L e2>| with sesquilinear products.
Real power_identity_residual(const YProblemInstance& instance, const VectorXc& e1_coords);

/// alpha = volume * [(eps1 - eps0) - (eps1 - eps0)^2 (Y* + eps1)^{-1}] in the
/// coordinates of Y*. With volume = 1 this is alpha/|Omega|.
MatrixXc discrete_polarizability(const MatrixXc& y_star, Complex eps1, Complex eps0, Real volume = 1.0);

/// Discrete dielectric cell as a Y-problem: K = C^{dN} (component-major), E
/// the range of the gradient projection used by the grid solver, V the fields
/// constant on the inclusion (basis chi e_i / sqrt(N_Omega)), and L = eps(x)
/// with host permittivity 1.
YProblemInstance dielectric_cell_instance(const PixelInclusion& inclusion, Complex eps1);

// Electrical networks.

enum class EdgeKind { impedance, source };

struct NetworkEdge {
  int from = 0;
  int to = 0;
  EdgeKind kind = EdgeKind::impedance;
  Complex impedance{0.0};
};

struct NetworkSpec {
  int nodes = 0;
  std::vector<NetworkEdge> edges;

  void validate() const;
  /// Signed node x edge incidence matrix: +1 at `from`, -1 at `to`.
  MatrixXr incidence() const;
  std::vector<int> source_edges() const;
};

/// Edge space as ambient space, E = potential drops (range of M^T), V = source
/// edge coordinates, L = diag(1/z) on impedance edges. With this convention Y*
/// is an admittance: the current drawn from each source per unit voltage.
YProblemInstance network_to_instance(const NetworkSpec& spec);

/// Parses {"nodes": n, "edges": [{"from", "to", "kind": "source"|"impedance",
/// "impedance": [re, im]}]}. Unknown keys are rejected.
NetworkSpec network_from_json(const std::string& text);

}  // namespace wavebound
