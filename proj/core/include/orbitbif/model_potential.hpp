#ifndef ORBITBIF_MODEL_POTENTIAL_HPP
#define ORBITBIF_MODEL_POTENTIAL_HPP

#include <Eigen/Core>

#include <vector>

#include "orbitbif/errors.hpp"

namespace orbitbif {

// One term c * prod_i u_i^{e_i} of a polynomial on R^m.
struct Monomial {
  double coeff = 0.0;
  std::vector<int> exponents;

  int degree() const;
};

// Polynomial potential F on R^m with a critical point (or critical circle) at
// the base point u0. Two families:
//
//  * quadratic-plus-remainder: F(u) = (A(u-u0), u-u0)/2 + g(u-u0) with a
//    symmetric coupling matrix A and a polynomial remainder of degree >= 3
//    in every term, so grad g and its Hessian vanish at 0;
//  * rotation-invariant on the plane: F(u) = f(|u|^2) with a polynomial f,
//    base point u0 = (sqrt(r0), 0) on a critical circle f'(r0) = 0. The
//    Hessian at u0 is 4 f''(r0) u0 u0^T, so its spectrum is {0, 4 f''(r0) r0}
//    with the zero along the orbit tangent.
//
// Construction verifies the critical point, the analytic Hessian against
// finite differences (rotation-invariant family), and the orbit
// nondegeneracy dim ker(Hessian) = orbit dimension.
class ModelPotential {
 public:
  static ModelPotential quadratic_plus_remainder(const Eigen::MatrixXd& A,
                                                 const Eigen::VectorXd& u0,
                                                 std::vector<Monomial> remainder = {},
                                                 int orbit_dim = 0);
  static ModelPotential radial_family(std::vector<double> f_coefficients, double r0);

  int components() const { return static_cast<int>(u0_.size()); }
  double value(const Eigen::VectorXd& u) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& u) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& u) const;

  // Hessian at the base point; the coupling matrix of the linearized problem.
  const Eigen::MatrixXd& linearization() const { return A_; }
  const Eigen::VectorXd& base_point() const { return u0_; }
  int orbit_dim() const { return orbit_dim_; }
  // Polynomial degree of grad F, for sizing exact quadratures.
  int gradient_degree() const { return gradient_degree_; }
  // True when SO(2) rotates the two components and u0 sits on a free orbit.
  bool has_component_rotation() const { return component_rotation_; }

 private:
  ModelPotential() = default;
  void validate() const;

  Eigen::MatrixXd A_;
  Eigen::VectorXd u0_;
  std::vector<Monomial> remainder_;      // quadratic-plus-remainder family
  std::vector<double> f_coefficients_;   // rotation-invariant family
  bool is_radial_family_ = false;
  bool component_rotation_ = false;
  int orbit_dim_ = 0;
  int gradient_degree_ = 1;
};

}  // namespace orbitbif

#endif
