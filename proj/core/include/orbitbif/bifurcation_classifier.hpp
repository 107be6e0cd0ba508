#ifndef ORBITBIF_BIFURCATION_CLASSIFIER_HPP
#define ORBITBIF_BIFURCATION_CLASSIFIER_HPP

#include <string>
#include <utility>
#include <vector>

#include "orbitbif/euler_ring_so2.hpp"
#include "orbitbif/operator_spectrum.hpp"

namespace orbitbif {

// Candidate bifurcation level: a quotient beta_k / alpha_j of a Laplacian
// eigenvalue by a nonzero eigenvalue of A. These are the only levels where
// the kernel of Id - L_{lambda A} can exceed ker A.
struct BifurcationCandidate {
  double lambda0 = 0.0;
  // (alpha_j, beta_k) pairs with beta_k = lambda0 * alpha_j, alpha_j != 0.
  std::vector<std::pair<double, double>> witnesses;
  // Full kernel structure at lambda0, including the (alpha=0, beta=0)
  // component when A is singular.
  std::vector<KernelComponent> intersected;
};

enum class SymmetryBreaking { yes, not_implied, not_applicable };

std::string to_string(SymmetryBreaking s);

struct ClassificationRecord {
  double lambda0 = 0.0;
  bool c1 = false;    // a crossing eigenspace carries a nontrivial rotation block
  bool c2 = false;    // all crossing eigenspaces trivial, odd normal kernel
  bool c3 = false;    // level zero with odd signature of A
  bool thm0 = false;  // level zero with nonzero signature of A
  bool local_bifurcation = false;
  bool global_bifurcation = false;
  SymmetryBreaking symmetry_breaking = SymmetryBreaking::not_implied;
  bool radial_only = false;
  int kernel_dim_normal = 0;  // dim ker(Id - L_{lambda0 A}) - dim ker A
  std::vector<std::string> explanation;
};

// Default deduplication tolerance for candidate levels.
inline constexpr double kCandidateDedupTol = 1e-8;

// All quotients beta_k/alpha_j inside [lo, hi], deduplicated, sorted
// ascending, each with its witnesses and kernel structure. Requires the
// table to be enumerated far enough that no quotient inside the range can be
// missed: beta_max >= max(hi * max(alpha+), -lo * max(-alpha-), 0).
std::vector<BifurcationCandidate> lambda_candidates(const MatrixSpectrum& spec,
                                                    const SpectrumTable& eigs, double lo,
                                                    double hi);

// Half the gap from lambda0 to the nearest distinct candidate level, capped
// at 0.025*(1+|lambda0|) and floored at 1e-6. The interval
// [lambda0 - eps, lambda0 + eps] then contains no other candidate.
double lambda_gap_epsilon(const MatrixSpectrum& spec, const SpectrumTable& eigs, double lambda0);

// Decide the bifurcation conditions at one candidate. Every condition is
// computed along two independent routes and cross-checked; on the disk the
// c1/c2 verdict is additionally checked against the Euler-characteristic
// witness. Disagreement throws InternalConsistencyError (an implementation
// bug, never a data error).
ClassificationRecord classify(const BifurcationCandidate& candidate, const MatrixSpectrum& spec,
                              const SpectrumTable& eigs, double epsilon = -1.0);

SymmetryBreaking symmetry_breaking_test(const BifurcationCandidate& candidate,
                                        const MatrixSpectrum& spec, const SpectrumTable& eigs);

// True iff every crossing eigenspace away from alpha = 0 is one-dimensional;
// nearby nontrivial solutions are then all radial.
bool radial_only_test(const BifurcationCandidate& candidate, const MatrixSpectrum& spec,
                      const SpectrumTable& eigs);

// Verifies dim ker(hessian) == orbit_dim at the declared tolerance
// 1e-8*(1+max|entry|). A failure means the standing nondegeneracy hypothesis
// does not hold and classification must be refused.
bool nondegenerate_orbit_check(const Eigen::MatrixXd& hessian_at_u0, int orbit_dim);

// Euler-characteristic route to the index change on the disk, with epsilon
// from the half-gap rule. Equals (c1 || c2) for nonzero candidates.
bool index_change_witness(const BifurcationCandidate& candidate, const MatrixSpectrum& spec,
                          const SpectrumTable& eigs);

}  // namespace orbitbif

#endif
