#include "orbitbif/bifurcation_classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace orbitbif {

namespace {

struct ConditionEval {
  bool c1 = false, c2 = false, c3 = false, thm0 = false;
  int kernel_dim_normal = 0;
  int signature = 0;  // sum of multiplicities over alpha > 0 minus alpha < 0
};

// The (alpha=0, beta=0) kernel component is the orbit bookkeeping part and is
// skipped where the conditions say "setminus {0}". It is the only component
// matched to the zero eigenvalue.
bool is_zero_component(const KernelComponent& c) { return c.decomposition.beta == 0.0; }

ConditionEval evaluate_conditions(const BifurcationCandidate& cand, const MatrixSpectrum& spec) {
  ConditionEval ev;
  const bool at_zero = cand.lambda0 == 0.0;

  int mu_sum = 0;          // sum of mu over all intersected components
  int normal_dim = 0;      // kernel dimension beyond ker A
  bool any_big = false;    // some crossing eigenspace with dim > 1
  bool any_rotational = false;  // some crossing eigenspace with a block of degree >= 1
  bool all_dims_one = true;
  for (const auto& c : cand.intersected) {
    mu_sum += c.mu;
    if (c.decomposition.total_dim > 1) any_big = true;
    if (c.decomposition.total_dim != 1) all_dims_one = false;
    for (const auto& [l, dim] : c.decomposition.blocks)
      if (l >= 1) any_rotational = true;
  }
  if (at_zero) {
    normal_dim = kernel_dimension(cand.intersected) - spec.kernel_dim;
  } else {
    for (const auto& c : cand.intersected)
      if (!is_zero_component(c)) normal_dim += c.mu * c.decomposition.total_dim;
    const int route2 = kernel_dimension(cand.intersected) - spec.kernel_dim;
    if (normal_dim != route2)
      throw InternalConsistencyError("classify: normal kernel dimension routes disagree");
  }
  ev.kernel_dim_normal = normal_dim;

  for (const auto& me : spec.eigenvalues) {
    if (me.alpha > spec.merge_tol) ev.signature += me.multiplicity;
    if (me.alpha < -spec.merge_tol) ev.signature -= me.multiplicity;
  }

  if (!at_zero) {
    ev.c1 = any_big;
    if (ev.c1 != any_rotational)
      throw InternalConsistencyError(
          "classify: dim > 1 and nontrivial-representation routes disagree");
    if (!ev.c1 && all_dims_one) {
      ev.c2 = normal_dim % 2 == 1;
      // Independent route: sum of crossing multiplicities minus mu_A(0).
      const int odd_check = mu_sum - spec.kernel_dim;
      if ((odd_check % 2 != 0) != ev.c2)
        throw InternalConsistencyError("classify: odd-crossing routes disagree");
    }
  } else {
    const int m_minus_kernel = spec.size_m - spec.kernel_dim;
    ev.c3 = std::abs(ev.signature) % 2 == 1;
    if ((m_minus_kernel % 2 != 0) != ev.c3)
      throw InternalConsistencyError("classify: signature parity routes disagree");
    ev.thm0 = ev.signature != 0;
  }
  return ev;
}

}  // namespace

std::string to_string(SymmetryBreaking s) {
  switch (s) {
    case SymmetryBreaking::yes:
      return "yes";
    case SymmetryBreaking::not_implied:
      return "not-implied";
    case SymmetryBreaking::not_applicable:
      return "not-applicable";
  }
  return "?";
}

std::vector<BifurcationCandidate> lambda_candidates(const MatrixSpectrum& spec,
                                                    const SpectrumTable& eigs, double lo,
                                                    double hi) {
  if (!(lo < hi)) throw DomainError("lambda_candidates: need lo < hi");
  double needed = 0.0;
  for (const auto& me : spec.eigenvalues) {
    if (std::abs(me.alpha) <= spec.merge_tol) continue;
    needed = std::max(needed, me.alpha > 0 ? hi * me.alpha : lo * me.alpha);
  }
  if (eigs.beta_max < needed * (1.0 - 1e-12))
    throw InsufficientCutoffError("lambda_candidates: beta_max=" + std::to_string(eigs.beta_max) +
                                  " but quotients in range need " + std::to_string(needed));

  std::vector<double> quotients;
  for (const auto& d : group_by_beta(eigs)) {
    for (const auto& me : spec.eigenvalues) {
      if (std::abs(me.alpha) <= spec.merge_tol) continue;
      double q = d.beta / me.alpha;
      if (q == 0.0) q = 0.0;  // normalize -0
      if (q >= lo && q <= hi) quotients.push_back(q);
    }
  }
  std::sort(quotients.begin(), quotients.end());

  std::vector<BifurcationCandidate> out;
  for (std::size_t i = 0; i < quotients.size();) {
    const double lambda0 = quotients[i];
    std::size_t j = i;
    while (j < quotients.size() &&
           quotients[j] - lambda0 <= kCandidateDedupTol * (1.0 + std::abs(lambda0)))
      ++j;
    i = j;

    BifurcationCandidate cand;
    cand.lambda0 = lambda0;
    for (const auto& d : group_by_beta(eigs)) {
      for (const auto& me : spec.eigenvalues) {
        if (std::abs(me.alpha) <= spec.merge_tol) continue;
        if (std::abs(lambda0 * me.alpha - d.beta) <= kIntersectionTol * (1.0 + std::abs(d.beta)))
          cand.witnesses.emplace_back(me.alpha, d.beta);
      }
    }
    cand.intersected = kernel_description(spec, eigs, lambda0);
    out.push_back(std::move(cand));
  }
  return out;
}

double lambda_gap_epsilon(const MatrixSpectrum& spec, const SpectrumTable& eigs, double lambda0) {
  double gap = std::numeric_limits<double>::infinity();
  for (const auto& d : group_by_beta(eigs)) {
    for (const auto& me : spec.eigenvalues) {
      if (std::abs(me.alpha) <= spec.merge_tol) continue;
      const double q = d.beta / me.alpha;
      const double dist = std::abs(q - lambda0);
      if (dist > kCandidateDedupTol * (1.0 + std::abs(lambda0))) gap = std::min(gap, dist);
    }
  }
  const double cap = 0.025 * (1.0 + std::abs(lambda0));
  const double eps = std::isfinite(gap) ? std::min(0.5 * gap, cap) : cap;
  return std::max(eps, 1e-6);
}

ClassificationRecord classify(const BifurcationCandidate& candidate, const MatrixSpectrum& spec,
                              const SpectrumTable& eigs, double epsilon) {
  ClassificationRecord rec;
  rec.lambda0 = candidate.lambda0;
  const auto ev = evaluate_conditions(candidate, spec);
  rec.c1 = ev.c1;
  rec.c2 = ev.c2;
  rec.c3 = ev.c3;
  rec.thm0 = ev.thm0;
  rec.kernel_dim_normal = ev.kernel_dim_normal;
  rec.local_bifurcation = ev.c1 || ev.c2 || ev.c3 || ev.thm0;
  rec.global_bifurcation = ev.c1 || ev.c2 || ev.c3;
  rec.radial_only = radial_only_test(candidate, spec, eigs);
  rec.symmetry_breaking = symmetry_breaking_test(candidate, spec, eigs);

  std::ostringstream trace;
  trace << "kernel dim beyond orbit: " << rec.kernel_dim_normal;
  rec.explanation.push_back(trace.str());
  if (rec.c1)
    rec.explanation.push_back(
        "C1: a crossing eigenspace has dimension > 1 (nontrivial rotation block)");
  if (rec.c2)
    rec.explanation.push_back("C2: all crossing eigenspaces trivial, odd crossing count");
  if (rec.c3) rec.explanation.push_back("C3: level zero with odd signature of A");
  if (rec.thm0 && !rec.c3)
    rec.explanation.push_back(
        "level zero with nonzero even signature: local bifurcation only; "
        "the degree argument gives no global conclusion");
  if (!rec.local_bifurcation)
    rec.explanation.push_back("no sufficient condition applies; level left undecided");
  if (rec.radial_only)
    rec.explanation.push_back("all crossing eigenspaces trivial: nearby solutions stay radial");
  if (candidate.lambda0 == 0.0 &&
      std::none_of(candidate.intersected.begin(), candidate.intersected.end(),
                   [&](const KernelComponent& c) { return !is_zero_component(c); }))
    rec.explanation.push_back("degenerate radial test: no nonzero crossing eigenvalue at 0");

  // On the disk the condition verdict must match the Euler-characteristic
  // route through the Conley index.
  if (eigs.dimension_N == 2 && candidate.lambda0 != 0.0) {
    const double eps = epsilon > 0.0 ? epsilon : lambda_gap_epsilon(spec, eigs, candidate.lambda0);
    const bool witness = orbitbif::index_change_witness(spec, eigs, candidate.lambda0, eps);
    if (witness != (rec.c1 || rec.c2))
      throw InternalConsistencyError(
          "classify: Euler-characteristic witness disagrees with the condition verdict at "
          "lambda0=" +
          std::to_string(candidate.lambda0));
    rec.explanation.push_back(witness ? "index-change witness: confirmed"
                                      : "index-change witness: no change");
  }
  return rec;
}

SymmetryBreaking symmetry_breaking_test(const BifurcationCandidate& candidate,
                                        const MatrixSpectrum& spec, const SpectrumTable& eigs) {
  if (radial_only_test(candidate, spec, eigs)) return SymmetryBreaking::not_applicable;
  const auto ev = evaluate_conditions(candidate, spec);
  const bool global = ev.c1 || ev.c2 || ev.c3;
  bool all_nonradial = true;
  for (const auto& c : candidate.intersected) {
    if (is_zero_component(c)) continue;
    if (c.decomposition.fixed_dim != 0) all_nonradial = false;
  }
  if (global && all_nonradial) return SymmetryBreaking::yes;
  return SymmetryBreaking::not_implied;
}

bool radial_only_test(const BifurcationCandidate& candidate, const MatrixSpectrum& spec,
                      const SpectrumTable& eigs) {
  (void)spec;
  (void)eigs;
  for (const auto& c : candidate.intersected) {
    if (is_zero_component(c)) continue;
    if (c.decomposition.total_dim != 1) return false;
  }
  return true;
}

bool nondegenerate_orbit_check(const Eigen::MatrixXd& hessian_at_u0, int orbit_dim) {
  if (orbit_dim < 0) throw DomainError("nondegenerate_orbit_check: negative orbit dimension");
  const auto spec = matrix_spectrum(hessian_at_u0);
  const double tol = 1e-8 * (1.0 + hessian_at_u0.cwiseAbs().maxCoeff());
  int kernel = 0;
  for (const auto& me : spec.eigenvalues)
    if (std::abs(me.alpha) <= tol) kernel += me.multiplicity;
  return kernel == orbit_dim;
}

bool index_change_witness(const BifurcationCandidate& candidate, const MatrixSpectrum& spec,
                          const SpectrumTable& eigs) {
  const double eps = lambda_gap_epsilon(spec, eigs, candidate.lambda0);
  return index_change_witness(spec, eigs, candidate.lambda0, eps);
}

}  // namespace orbitbif
