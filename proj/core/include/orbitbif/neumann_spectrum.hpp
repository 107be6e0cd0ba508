#ifndef ORBITBIF_NEUMANN_SPECTRUM_HPP
#define ORBITBIF_NEUMANN_SPECTRUM_HPP

#include <string>
#include <utility>
#include <vector>

#include "orbitbif/errors.hpp"
#include "orbitbif/root_cache.hpp"

namespace orbitbif {

// One eigenvalue beta_{lm} = x_{lm}^2 of the Neumann Laplacian on the unit
// ball in R^N, identified by its angular degree l and radial index m.
// The convention x_{00} = 0 gives the zero eigenvalue (constants).
struct NeumannEigenvalue {
  int dimension_N = 2;
  int degree_l = 0;
  int radial_index_m = 0;
  double root_x = 0.0;
  int harmonic_dim = 1;

  double beta() const { return root_x * root_x; }
};

// SO(N)-isotypic decomposition of one Laplacian eigenspace: the list of
// angular degrees whose radial condition shares this eigenvalue, with the
// dimension contributed by each degree.
struct EigenspaceDecomposition {
  double beta = 0.0;
  std::vector<std::pair<int, int>> blocks;  // (degree_l, harmonic_dim), degrees increasing
  int total_dim = 0;
  int fixed_dim = 0;  // dimension of the SO(N)-fixed subspace: 1 iff a degree-0 block
};

// Left-hand side of the radial Neumann condition,
//   J'_{l+(N-2)/2}(x) - (N-2)/(2x) J_{l+(N-2)/2}(x),
// whose positive zeros are the x_{lm}. x must be positive; the x = 0
// convention is handled by the enumeration, not here.
double radial_boundary_value(int N, int l, double x);

// First m_max positive roots x_{l1} < x_{l2} < ... of the radial condition,
// each with residual <= 1e-11. Brackets come from a 0.05-step sign scan, so
// no root is skipped; refinement is bisection to width 1e-13 plus one Newton
// polish. Results are served from / recorded into the cache when given.
std::vector<double> neumann_roots(int N, int l, int m_max, RootCache* cache = nullptr);

// dim H^N_l: 1 for (N=2, l=0), 2 for (N=2, l>=1),
// (2l+N-2) (N-3+l)! / (l! (N-2)!) for N >= 3.
long long harmonic_dim(int N, int l);

// Enumerated lower part of the spectrum, sorted by beta ascending with ties
// broken by degree.
struct SpectrumTable {
  int dimension_N = 2;
  double beta_max = 0.0;
  std::vector<NeumannEigenvalue> entries;
  std::vector<std::string> warnings;  // e.g. coincident roots across degrees
};

// All beta_{lm} <= beta_max, including beta = 0 first. The degree scan stops
// at the first l whose smallest root exceeds sqrt(beta_max); the monotonicity
// x_{l,1} < x_{l+1,1} is asserted at runtime for the computed range.
SpectrumTable eigenvalues_up_to(int N, double beta_max, RootCache* cache = nullptr);

// Decomposition of the eigenspace of beta. Throws NotAnEigenvalueError if no
// computed root matches |sqrt(beta) - x_{lm}| <= coincidence_tol*(1+sqrt(beta)).
EigenspaceDecomposition eigenspace_decomposition(int N, double beta,
                                                 double coincidence_tol = 1e-9,
                                                 RootCache* cache = nullptr);

// Collapse a table into distinct eigenvalues with their decompositions,
// merging roots from different degrees that coincide within the tolerance.
// Coincidences are reported in the returned warnings of the table they came
// from; here they just merge.
std::vector<EigenspaceDecomposition> group_by_beta(const SpectrumTable& table,
                                                   double coincidence_tol = 1e-9);

}  // namespace orbitbif

#endif
