#ifndef ORBITBIF_GALERKIN_VERIFIER_HPP
#define ORBITBIF_GALERKIN_VERIFIER_HPP

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "orbitbif/disk_basis.hpp"
#include "orbitbif/model_potential.hpp"

namespace orbitbif {

// Functional value by quadrature of both terms (kinetic part included), so a
// finite difference of it is an independent check of eval_gradient.
double eval_functional(const ModelPotential& model, const DiskBasis& basis,
                       const Eigen::VectorXd& coeffs, double lambda,
                       std::vector<std::string>* warnings = nullptr);

// Coefficients of the H^1 gradient of the reduced functional: the linear part
// is the diagonal beta/(1+beta) identity, the potential term is integrated by
// the basis quadrature.
Eigen::VectorXd eval_gradient(const ModelPotential& model, const DiskBasis& basis,
                              const Eigen::VectorXd& coeffs, double lambda,
                              std::vector<std::string>* warnings = nullptr);

// Galerkin matrix of the second variation (symmetric).
Eigen::MatrixXd eval_hessian(const ModelPotential& model, const DiskBasis& basis,
                             const Eigen::VectorXd& coeffs, double lambda,
                             std::vector<std::string>* warnings = nullptr);

struct NewtonOptions {
  int max_iterations = 25;
  double tolerance = 1e-11;
  double max_initial_residual = 0.1;
};

// Newton iteration on the bordered system (gradient = 0 plus one linearized
// phase condition <c - c_in, p> = 0 per supplied phase vector, pinning orbit
// directions). Throws ConvergenceError / SingularSystemError.
Eigen::VectorXd newton_correct(const ModelPotential& model, const DiskBasis& basis,
                               const Eigen::VectorXd& coeffs, double lambda,
                               const std::vector<Eigen::VectorXd>& phases = {},
                               const NewtonOptions& opts = {});

// Angular-mode content of a coefficient vector, as a proxy for the spatial
// isotropy of the function it represents. The verifier applies it to the
// deviation from the trivial state.
struct IsotropySignature {
  double radial_energy_fraction = 1.0;  // share of the squared norm in degree-0 modes
  int dominant_degree = 0;
  bool full_so2 = true;     // fraction > 0.999: indistinguishable from radial
  int cyclic_order = 0;     // gcd of the active degrees when not full SO(2)
};

IsotropySignature isotropy_signature(const DiskBasis& basis, const Eigen::VectorXd& coeffs);

enum class BranchKind { trivial, bifurcating };

struct BranchPoint {
  double lambda = 0.0;
  Eigen::VectorXd coeffs;
  double residual_norm = 0.0;
  std::array<double, 4> jacobian_min_singulars{};
  IsotropySignature isotropy;
};

struct Branch {
  BranchKind kind = BranchKind::trivial;
  std::vector<BranchPoint> points;
  std::optional<std::pair<double, int>> origin;  // (lambda0, kernel direction index)
};

struct StepPolicy {
  double initial = 0.05;
  double min_step = 1e-6;
  double max_step = 0.1;
  double grow = 1.3;
  double shrink = 0.5;
  int grow_after = 3;
};

struct DetectionResult {
  Branch trivial_branch;
  std::vector<double> detections;
  std::vector<std::string> warnings;
};

// Walk the exactly-known trivial branch across [lambda_lo, lambda_hi]. At
// each step the bordered Hessian on the orbit-normal space is assembled; a
// detection is a level where its count of near-zero singular values exceeds
// zero (equivalently: where its negative-eigenvalue count jumps), refined by
// bisection to width 1e-8.
DetectionResult continue_trivial_and_detect(const ModelPotential& model, const DiskBasis& basis,
                                            double lambda_lo, double lambda_hi,
                                            const StepPolicy& policy = {});

// Unit vector spanning (one direction of) the near-kernel of the bordered
// Hessian at a detected level; deterministic sign convention.
Eigen::VectorXd kernel_direction_at(const ModelPotential& model, const DiskBasis& basis,
                                    double lambda0);

inline const std::vector<double> kDefaultAmplitudes{1e-3, 3e-3, 1e-2};

// Seed the near-kernel direction at a detected level and trace the emanating
// solution curve by pseudo-arclength continuation with orbit phase
// conditions. Returns a branch with >= 10 accepted points, or nullopt with
// the failure reason in `error` (not fatal; the discretization may simply
// not reach the curve from these seeds).
std::optional<Branch> switch_branch(const ModelPotential& model, const DiskBasis& basis,
                                    double lambda0, const Eigen::VectorXd& kernel_direction,
                                    const std::vector<double>& amplitudes = kDefaultAmplitudes,
                                    const StepPolicy& policy = {}, std::string* error = nullptr);

// Branch table in the fixed CSV schema; coeff_norm is the H^1 distance from
// the trivial state, which is what diagram tooling plots.
void write_branches_csv(std::ostream& out, const std::vector<Branch>& branches,
                        const Eigen::VectorXd& trivial_coeffs);

// Full states as a JSON sidecar.
void write_states_json(std::ostream& out, const std::vector<Branch>& branches);

}  // namespace orbitbif

#endif
