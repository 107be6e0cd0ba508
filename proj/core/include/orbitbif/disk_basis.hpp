#ifndef ORBITBIF_DISK_BASIS_HPP
#define ORBITBIF_DISK_BASIS_HPP

#include <Eigen/Core>

#include <vector>

#include "orbitbif/neumann_spectrum.hpp"

namespace orbitbif {

// One basis function of the tensor basis on the disk: an H^1-normalized
// Neumann eigenfunction (degree l, radial index m, cos/sin parity) placed in
// one component slot.
struct BasisEntry {
  int component = 0;
  int degree_l = 0;
  int radial_m = 0;
  int parity = 0;  // 0 = cos, 1 = sin; degree 0 has parity 0 only
  double root_x = 0.0;
  double beta = 0.0;
  double norm = 1.0;  // H^1 normalization constant applied to the raw mode
};

// Values of the normalized scalar modes on a tensor quadrature grid.
struct DiskQuadrature {
  Eigen::VectorXd weights;       // includes the polar Jacobian r
  Eigen::MatrixXd values;        // nq x scalar_count
  Eigen::MatrixXd deriv_r;       // radial derivative
  Eigen::MatrixXd deriv_t;       // (1/r) * angular derivative
};

// Spectral Galerkin basis on the unit disk: Neumann eigenfunctions up to
// degree l_max and radial index m_max, tensored with the m component slots.
// The H^1 inner product of the problem is the coefficient dot product, and
// the weak Laplacian is diagonal with entries beta/(1+beta).
//
// Flat coefficient layout is component-major: index = component*scalar_count
// + scalar. Scalar modes are ordered degree 0 (radial indices 0..m_max), then
// degree 1..l_max with radial indices 1..m_max, cos before sin.
class DiskBasis {
 public:
  // gradient_degree sizes the quadrature so that integrals of
  // grad F(u) * basis are exact (polynomial F); the stated floors
  // (Gauss-Legendre degree 2*m_max+8 radially, 4*l_max+8 angular points) are
  // always respected and exceeded when the oscillation of the highest modes
  // demands it.
  static DiskBasis build(int l_max, int m_max, int m_components, int gradient_degree = 3,
                         RootCache* cache = nullptr);

  int scalar_count() const { return static_cast<int>(scalar_modes_.size()); }
  int components() const { return m_; }
  int size() const { return scalar_count() * m_; }
  int l_max() const { return l_max_; }
  int m_max() const { return m_max_; }
  int covered_degree() const { return gradient_degree_; }

  const std::vector<BasisEntry>& entries() const { return entries_; }
  const std::vector<BasisEntry>& scalar_modes() const { return scalar_modes_; }
  int flat_index(int scalar, int component) const { return component * scalar_count() + scalar; }

  // beta/(1+beta) per scalar mode.
  const Eigen::VectorXd& linear_factor() const { return linear_factor_; }

  int quadrature_size() const { return static_cast<int>(quad_.weights.size()); }
  const DiskQuadrature& quadrature() const { return quad_; }

  // Normalized mode values on an arbitrary tensor grid (test oracle hook).
  DiskQuadrature evaluate_on(int n_r, int n_phi) const;

  // Coefficients of the constant state u(x) = value.
  Eigen::VectorXd constant_state(const Eigen::VectorXd& value) const;

  // Orbit tangents in coefficient space at a state c.
  // Rotation of the two component slots (the plane action):
  Eigen::VectorXd component_rotation_tangent(const Eigen::VectorXd& coeffs) const;
  // Rotation of the disk (angle shift on the cos/sin pairs):
  Eigen::VectorXd spatial_rotation_tangent(const Eigen::VectorXd& coeffs) const;

 private:
  DiskQuadrature raw_evaluate(int n_r, int n_phi, bool apply_norm) const;

  int l_max_ = 0, m_max_ = 0, m_ = 1, gradient_degree_ = 3;
  std::vector<BasisEntry> scalar_modes_;
  std::vector<BasisEntry> entries_;
  Eigen::VectorXd linear_factor_;
  DiskQuadrature quad_;
};

}  // namespace orbitbif

#endif
