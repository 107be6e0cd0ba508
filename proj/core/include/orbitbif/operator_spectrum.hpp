#ifndef ORBITBIF_OPERATOR_SPECTRUM_HPP
#define ORBITBIF_OPERATOR_SPECTRUM_HPP

#include <Eigen/Core>

#include <vector>

#include "orbitbif/errors.hpp"
#include "orbitbif/neumann_spectrum.hpp"

namespace orbitbif {

// Distinct eigenvalue of the symmetric coupling matrix A with an orthonormal
// basis of its eigenspace (columns of `vectors`).
struct MatrixEigenvalue {
  double alpha = 0.0;
  int multiplicity = 1;
  Eigen::MatrixXd vectors;  // size_m x multiplicity
};

struct MatrixSpectrum {
  int size_m = 0;
  std::vector<MatrixEigenvalue> eigenvalues;  // ascending, separated by > merge_tol
  int kernel_dim = 0;
  double merge_tol = 0.0;

  double min_alpha() const { return eigenvalues.front().alpha; }
  double max_alpha() const { return eigenvalues.back().alpha; }
};

// Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations
// (off-diagonal norm driven to 1e-13 relative); eigenvalues within merge_tol
// are merged into one entry with summed multiplicity. merge_tol < 0 selects
// the default 1e-9 * (1 + max|a_ij|).
MatrixSpectrum matrix_spectrum(const Eigen::MatrixXd& A, double merge_tol = -1.0);

// One eigenvalue (beta_k - lambda alpha_j) / (1 + beta_k) of Id - L_{lambda A}
// on the truncated space.
struct OperatorEigenvalue {
  double value = 0.0;
  double beta = 0.0;
  double alpha = 0.0;
  int multiplicity = 1;
};

// Tolerance for deciding lambda*alpha_j == beta_k, relative in beta.
inline constexpr double kIntersectionTol = 1e-8;

// All (alpha_j, beta_k) pairs with beta_k in the table. Throws
// InsufficientCutoffError when the table is too short to contain every
// nonpositive eigenvalue (beta_max < lambda*alpha for some alpha).
std::vector<OperatorEigenvalue> spectrum_id_minus_L(const MatrixSpectrum& spec,
                                                    const SpectrumTable& eigs, double lambda);

// One kernel component per element of sigma(lambda A) intersected with the
// Laplacian spectrum: the matrix eigenvalue lambda*alpha_j that hits beta_k,
// its multiplicity in lambda*A, and the eigenspace it meets.
struct KernelComponent {
  double alpha_ji = 0.0;  // element of sigma(lambda A), equals the matched beta
  int mu = 1;             // multiplicity of alpha_ji as an eigenvalue of lambda*A
  EigenspaceDecomposition decomposition;
};

std::vector<KernelComponent> kernel_description(const MatrixSpectrum& spec,
                                                const SpectrumTable& eigs, double lambda);

// Total kernel dimension implied by a kernel description.
int kernel_dimension(const std::vector<KernelComponent>& components);

// Morse index: total multiplicity over pairs with beta_k < lambda*alpha_j.
// Orbit-tangent directions carry alpha = 0 and never contribute.
int morse_index(const MatrixSpectrum& spec, const SpectrumTable& eigs, double lambda);

}  // namespace orbitbif

#endif
