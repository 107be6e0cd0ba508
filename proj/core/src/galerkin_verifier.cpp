#include "orbitbif/galerkin_verifier.hpp"

#include <Eigen/Dense>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>

namespace orbitbif {

namespace {

void check_degree(const ModelPotential& model, const DiskBasis& basis,
                  std::vector<std::string>* warnings) {
  if (warnings && model.gradient_degree() > basis.covered_degree()) {
    warnings->push_back("quadrature sized for degree " + std::to_string(basis.covered_degree()) +
                        " but the potential gradient has degree " +
                        std::to_string(model.gradient_degree()) +
                        "; integrals are no longer exact");
  }
}

// Coefficients are component-major, so the ns x m coefficient matrix is a
// plain reinterpretation.
Eigen::Map<const Eigen::MatrixXd> as_matrix(const Eigen::VectorXd& coeffs, int ns, int m) {
  return Eigen::Map<const Eigen::MatrixXd>(coeffs.data(), ns, m);
}

Eigen::VectorXd flatten(const Eigen::MatrixXd& grid) {
  return Eigen::Map<const Eigen::VectorXd>(grid.data(), grid.size());
}

Eigen::VectorXd flat_linear_factor(const DiskBasis& basis) {
  const int ns = basis.scalar_count();
  Eigen::VectorXd f(basis.size());
  for (int comp = 0; comp < basis.components(); ++comp)
    f.segment(static_cast<Eigen::Index>(comp) * ns, ns) = basis.linear_factor();
  return f;
}

// Orthonormalized orbit tangents at a state; near-zero or dependent
// directions are dropped.
std::vector<Eigen::VectorXd> phases_at(const ModelPotential& model, const DiskBasis& basis,
                                       const Eigen::VectorXd& coeffs) {
  std::vector<Eigen::VectorXd> raw;
  if (model.has_component_rotation()) raw.push_back(basis.component_rotation_tangent(coeffs));
  raw.push_back(basis.spatial_rotation_tangent(coeffs));
  std::vector<Eigen::VectorXd> phases;
  const double scale = 1.0 + coeffs.norm();
  for (auto& t : raw) {
    const double original = t.norm();
    if (original <= 1e-10 * scale) continue;
    for (const auto& p : phases) t -= p.dot(t) * p;
    if (t.norm() <= 1e-6 * original) continue;
    phases.push_back(t.normalized());
  }
  return phases;
}

Eigen::MatrixXd bordered_matrix(const Eigen::MatrixXd& H,
                                const std::vector<Eigen::VectorXd>& phases) {
  const int n = static_cast<int>(H.rows());
  const int k = static_cast<int>(phases.size());
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n + k, n + k);
  B.topLeftCorner(n, n) = H;
  for (int j = 0; j < k; ++j) {
    B.block(0, n + j, n, 1) = phases[j];
    B.block(n + j, 0, 1, n) = phases[j].transpose();
  }
  return B;
}

std::array<double, 4> smallest_four_abs(const Eigen::VectorXd& eigenvalues) {
  std::vector<double> mags(eigenvalues.data(), eigenvalues.data() + eigenvalues.size());
  for (auto& v : mags) v = std::abs(v);
  std::sort(mags.begin(), mags.end());
  std::array<double, 4> out{0, 0, 0, 0};
  for (std::size_t i = 0; i < 4 && i < mags.size(); ++i) out[i] = mags[i];
  return out;
}

std::array<double, 4> smallest_four_singulars(const Eigen::MatrixXd& M) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(M);
  const auto& sv = svd.singularValues();
  std::array<double, 4> out{0, 0, 0, 0};
  const int n = static_cast<int>(sv.size());
  for (int i = 0; i < 4 && i < n; ++i) out[i] = sv[n - 1 - i];
  return out;
}

// Distance from the coefficient state to the orbit of the trivial solution.
double orbit_distance(const ModelPotential& model, const DiskBasis& basis,
                      const Eigen::VectorXd& coeffs) {
  const Eigen::VectorXd c0 = basis.constant_state(model.base_point());
  if (!model.has_component_rotation()) return (coeffs - c0).norm();
  const Eigen::Vector2d pair(coeffs[basis.flat_index(0, 0)], coeffs[basis.flat_index(0, 1)]);
  const Eigen::Vector2d base(c0[basis.flat_index(0, 0)], c0[basis.flat_index(0, 1)]);
  const double d2 = coeffs.squaredNorm() + c0.squaredNorm() - 2.0 * pair.norm() * base.norm();
  return std::sqrt(std::max(0.0, d2));
}

struct ExtendedResult {
  Eigen::VectorXd coeffs;
  double lambda = 0.0;
  double residual = 0.0;
  std::array<double, 4> singulars{};
};

// Newton on the pseudo-arclength system: gradient plus multipliers on the
// orbit tangents, one arclength row, one phase row per tangent.
ExtendedResult correct_extended(const ModelPotential& model, const DiskBasis& basis,
                                Eigen::VectorXd c, double lambda, const Eigen::VectorXd& c_ref,
                                double lambda_ref, const Eigen::VectorXd& tangent_c,
                                double tangent_lambda,
                                const std::vector<Eigen::VectorXd>& phases,
                                const NewtonOptions& opts) {
  const int n = static_cast<int>(c.size());
  const int k = static_cast<int>(phases.size());
  const auto& quad = basis.quadrature();
  const int ns = basis.scalar_count();
  const int m = basis.components();

  auto assemble = [&](const Eigen::VectorXd& cc, double ll) {
    const Eigen::MatrixXd H = eval_hessian(model, basis, cc, ll);
    // d(gradient)/d(lambda) is minus the quadrature term of the potential.
    const Eigen::MatrixXd U = quad.values * as_matrix(cc, ns, m);
    Eigen::MatrixXd G(quad.values.rows(), m);
    for (Eigen::Index q = 0; q < U.rows(); ++q)
      G.row(q) = quad.weights[q] * model.gradient(U.row(q).transpose()).transpose();
    const Eigen::VectorXd g_lambda = -flatten(quad.values.transpose() * G);

    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n + 1 + k, n + 1 + k);
    M.topLeftCorner(n, n) = H;
    M.block(0, n, n, 1) = g_lambda;
    M.block(n, 0, 1, n) = tangent_c.transpose();
    M(n, n) = tangent_lambda;
    for (int j = 0; j < k; ++j) {
      M.block(0, n + 1 + j, n, 1) = phases[j];
      M.block(n + 1 + j, 0, 1, n) = phases[j].transpose();
    }
    return M;
  };

  for (int it = 0; it < opts.max_iterations; ++it) {
    const Eigen::VectorXd g = eval_gradient(model, basis, c, lambda);
    const double arc = tangent_c.dot(c - c_ref) + tangent_lambda * (lambda - lambda_ref);
    double worst = std::max(g.norm(), std::abs(arc));
    for (const auto& p : phases) worst = std::max(worst, std::abs(p.dot(c - c_ref)));
    if (worst <= opts.tolerance) {
      ExtendedResult res;
      res.lambda = lambda;
      res.residual = g.norm();
      res.singulars = smallest_four_singulars(assemble(c, lambda));
      res.coeffs = std::move(c);
      return res;
    }

    const Eigen::MatrixXd M = assemble(c, lambda);
    Eigen::VectorXd rhs(n + 1 + k);
    rhs.head(n) = -g;
    rhs[n] = -arc;
    for (int j = 0; j < k; ++j) rhs[n + 1 + j] = -phases[j].dot(c - c_ref);

    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    if (!lu.isInvertible()) {
      const auto s4 = smallest_four_singulars(M);
      throw SingularSystemError("continuation corrector: singular bordered system",
                                {s4.begin(), s4.end()});
    }
    const Eigen::VectorXd delta = lu.solve(rhs);
    c += delta.head(n);
    lambda += delta[n];
  }
  throw ConvergenceError("continuation corrector: no convergence within " +
                         std::to_string(opts.max_iterations) + " iterations");
}

BranchPoint make_point(const ModelPotential& model, const DiskBasis& basis,
                       const ExtendedResult& res) {
  BranchPoint pt;
  pt.lambda = res.lambda;
  pt.coeffs = res.coeffs;
  pt.residual_norm = res.residual;
  pt.jacobian_min_singulars = res.singulars;
  const Eigen::VectorXd c0 = basis.constant_state(model.base_point());
  pt.isotropy = isotropy_signature(basis, res.coeffs - c0);
  return pt;
}

void append_csv_row(std::string& out, int branch_id, const char* kind, const BranchPoint& pt,
                    double measure) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%d,%s,%.17g,%.17g,%.17g,%.17g,%d,%.17g\n", branch_id, kind,
                pt.lambda, pt.residual_norm, pt.jacobian_min_singulars[0],
                pt.isotropy.radial_energy_fraction, pt.isotropy.dominant_degree, measure);
  out += buf;
}

}  // namespace

double eval_functional(const ModelPotential& model, const DiskBasis& basis,
                       const Eigen::VectorXd& coeffs, double lambda,
                       std::vector<std::string>* warnings) {
  if (coeffs.size() != basis.size()) throw DomainError("eval_functional: coefficient size");
  check_degree(model, basis, warnings);
  const auto& quad = basis.quadrature();
  const int ns = basis.scalar_count();
  const int m = basis.components();
  const auto C = as_matrix(coeffs, ns, m);
  const Eigen::MatrixXd DR = quad.deriv_r * C;
  const Eigen::MatrixXd DT = quad.deriv_t * C;
  const Eigen::MatrixXd U = quad.values * C;
  double kinetic = 0.0;
  double potential = 0.0;
  for (Eigen::Index q = 0; q < quad.weights.size(); ++q) {
    kinetic += quad.weights[q] * (DR.row(q).squaredNorm() + DT.row(q).squaredNorm());
    potential += quad.weights[q] * model.value(U.row(q).transpose());
  }
  return 0.5 * kinetic - lambda * potential;
}

Eigen::VectorXd eval_gradient(const ModelPotential& model, const DiskBasis& basis,
                              const Eigen::VectorXd& coeffs, double lambda,
                              std::vector<std::string>* warnings) {
  if (coeffs.size() != basis.size()) throw DomainError("eval_gradient: coefficient size");
  check_degree(model, basis, warnings);
  const auto& quad = basis.quadrature();
  const int ns = basis.scalar_count();
  const int m = basis.components();
  const Eigen::MatrixXd U = quad.values * as_matrix(coeffs, ns, m);
  Eigen::MatrixXd G(U.rows(), m);
  for (Eigen::Index q = 0; q < U.rows(); ++q)
    G.row(q) = quad.weights[q] * model.gradient(U.row(q).transpose()).transpose();
  const Eigen::MatrixXd quad_term = quad.values.transpose() * G;  // ns x m
  return flat_linear_factor(basis).cwiseProduct(coeffs) - lambda * flatten(quad_term);
}

Eigen::MatrixXd eval_hessian(const ModelPotential& model, const DiskBasis& basis,
                             const Eigen::VectorXd& coeffs, double lambda,
                             std::vector<std::string>* warnings) {
  if (coeffs.size() != basis.size()) throw DomainError("eval_hessian: coefficient size");
  check_degree(model, basis, warnings);
  const auto& quad = basis.quadrature();
  const int ns = basis.scalar_count();
  const int m = basis.components();
  const int nq = basis.quadrature_size();
  const Eigen::MatrixXd U = quad.values * as_matrix(coeffs, ns, m);

  // Pointwise Hessians of the potential, one channel per component pair.
  std::vector<Eigen::VectorXd> channel(static_cast<std::size_t>(m) * m,
                                       Eigen::VectorXd(nq));
  for (int q = 0; q < nq; ++q) {
    const Eigen::MatrixXd h = model.hessian(U.row(q).transpose());
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) channel[i * m + j][q] = quad.weights[q] * h(i, j);
  }

  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(basis.size(), basis.size());
  const Eigen::VectorXd lin = basis.linear_factor();
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      const Eigen::MatrixXd scaled =
          (quad.values.array().colwise() * channel[i * m + j].array()).matrix();
      const Eigen::MatrixXd K = quad.values.transpose() * scaled;
      H.block(static_cast<Eigen::Index>(i) * ns, static_cast<Eigen::Index>(j) * ns, ns, ns) =
          -lambda * K;
      if (i != j)
        H.block(static_cast<Eigen::Index>(j) * ns, static_cast<Eigen::Index>(i) * ns, ns, ns) =
            -lambda * K.transpose();
      else
        H.block(static_cast<Eigen::Index>(i) * ns, static_cast<Eigen::Index>(i) * ns, ns, ns) +=
            lin.asDiagonal();
    }
  }
  return 0.5 * (H + H.transpose());
}

Eigen::VectorXd newton_correct(const ModelPotential& model, const DiskBasis& basis,
                               const Eigen::VectorXd& coeffs, double lambda,
                               const std::vector<Eigen::VectorXd>& phases,
                               const NewtonOptions& opts) {
  const int n = static_cast<int>(coeffs.size());
  const int k = static_cast<int>(phases.size());
  Eigen::VectorXd c = coeffs;
  {
    const double r0 = eval_gradient(model, basis, c, lambda).norm();
    if (r0 > opts.max_initial_residual)
      throw ConvergenceError("newton_correct: initial residual " + std::to_string(r0) +
                             " exceeds " + std::to_string(opts.max_initial_residual));
  }
  for (int it = 0; it < opts.max_iterations; ++it) {
    const Eigen::VectorXd g = eval_gradient(model, basis, c, lambda);
    double worst = g.norm();
    for (const auto& p : phases) worst = std::max(worst, std::abs(p.dot(c - coeffs)));
    if (worst <= opts.tolerance) return c;

    const Eigen::MatrixXd B = bordered_matrix(eval_hessian(model, basis, c, lambda), phases);
    Eigen::VectorXd rhs(n + k);
    rhs.head(n) = -g;
    for (int j = 0; j < k; ++j) rhs[n + j] = -phases[j].dot(c - coeffs);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
    if (!lu.isInvertible()) {
      const auto s4 = smallest_four_singulars(B);
      throw SingularSystemError("newton_correct: singular bordered system",
                                {s4.begin(), s4.end()});
    }
    const Eigen::VectorXd delta = lu.solve(rhs);
    c += delta.head(n);
  }
  throw ConvergenceError("newton_correct: no convergence within " +
                         std::to_string(opts.max_iterations) + " iterations");
}

IsotropySignature isotropy_signature(const DiskBasis& basis, const Eigen::VectorXd& coeffs) {
  if (coeffs.size() != basis.size()) throw DomainError("isotropy_signature: coefficient size");
  IsotropySignature sig;
  std::map<int, double> energy;
  double total = 0.0;
  const int ns = basis.scalar_count();
  for (int comp = 0; comp < basis.components(); ++comp) {
    for (int s = 0; s < ns; ++s) {
      const double e = coeffs[basis.flat_index(s, comp)] * coeffs[basis.flat_index(s, comp)];
      energy[basis.scalar_modes()[s].degree_l] += e;
      total += e;
    }
  }
  if (total == 0.0) return sig;  // the zero deviation is radial
  sig.radial_energy_fraction = energy.count(0) ? energy[0] / total : 0.0;
  double best = -1.0;
  int gcd = 0;
  for (const auto& [l, e] : energy) {
    if (e > best) {
      best = e;
      sig.dominant_degree = l;
    }
    if (l >= 1 && e > 1e-6 * total) gcd = std::gcd(gcd, l);
  }
  sig.full_so2 = sig.radial_energy_fraction > 0.999;
  sig.cyclic_order = sig.full_so2 ? 0 : std::max(gcd, 1);
  return sig;
}

DetectionResult continue_trivial_and_detect(const ModelPotential& model, const DiskBasis& basis,
                                            double lambda_lo, double lambda_hi,
                                            const StepPolicy& policy) {
  if (!(lambda_lo < lambda_hi))
    throw DomainError("continue_trivial_and_detect: need lambda_lo < lambda_hi");
  if (!(policy.initial >= policy.min_step && policy.initial <= policy.max_step))
    throw ConvergenceError("continue_trivial_and_detect: inconsistent step policy");

  DetectionResult result;
  const Eigen::VectorXd c0 = basis.constant_state(model.base_point());
  const auto phases = phases_at(model, basis, c0);
  if (static_cast<int>(phases.size()) != model.orbit_dim())
    result.warnings.push_back("orbit tangents at the trivial state: expected " +
                              std::to_string(model.orbit_dim()) + ", found " +
                              std::to_string(phases.size()));

  // The potential Hessian is constant along the trivial branch, so the
  // Galerkin matrix is affine in lambda: H(lambda) = D - lambda*M with M
  // assembled once from an honest evaluation at lambda = 1.
  const Eigen::VectorXd lin = flat_linear_factor(basis);
  const Eigen::MatrixXd D = Eigen::MatrixXd(lin.asDiagonal());
  const Eigen::MatrixXd M = D - eval_hessian(model, basis, c0, 1.0);

  struct Probe {
    int negatives = 0;
    std::array<double, 4> smallest{};
  };
  auto probe = [&](double lambda) {
    const Eigen::MatrixXd B = bordered_matrix(D - lambda * M, phases);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B, Eigen::EigenvaluesOnly);
    Probe p;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      if (es.eigenvalues()[i] < -1e-9) ++p.negatives;
    p.smallest = smallest_four_abs(es.eigenvalues());
    return p;
  };

  result.trivial_branch.kind = BranchKind::trivial;
  double lambda = lambda_lo;
  Probe prev = probe(lambda);
  auto record = [&](double lam, const Probe& p) {
    BranchPoint pt;
    pt.lambda = lam;
    pt.coeffs = c0;
    pt.residual_norm = eval_gradient(model, basis, c0, lam).norm();
    pt.jacobian_min_singulars = p.smallest;
    pt.isotropy = isotropy_signature(basis, c0 - c0);
    result.trivial_branch.points.push_back(std::move(pt));
  };
  record(lambda, prev);

  const double step = std::min(policy.initial, policy.max_step);
  while (lambda < lambda_hi) {
    const double next = std::min(lambda + step, lambda_hi);
    const Probe here = probe(next);
    if (here.negatives != prev.negatives) {
      // Isolate every count change inside (lambda, next) to width 1e-8.
      struct Interval {
        double a, b;
        int na, nb;
      };
      std::vector<Interval> stack{{lambda, next, prev.negatives, here.negatives}};
      while (!stack.empty()) {
        const Interval iv = stack.back();
        stack.pop_back();
        if (iv.na == iv.nb) continue;
        if (iv.b - iv.a <= 1e-8) {
          const double star = 0.5 * (iv.a + iv.b);
          const auto at = probe(star);
          if (at.smallest[0] > 1e-7)
            result.warnings.push_back("detection at lambda=" + std::to_string(star) +
                                      " has smallest singular value " +
                                      std::to_string(at.smallest[0]));
          result.detections.push_back(star);
          continue;
        }
        const double mid = 0.5 * (iv.a + iv.b);
        const int nm = probe(mid).negatives;
        stack.push_back({iv.a, mid, iv.na, nm});
        stack.push_back({mid, iv.b, nm, iv.nb});
      }
    }
    record(next, here);
    prev = here;
    lambda = next;
  }
  std::sort(result.detections.begin(), result.detections.end());
  return result;
}

Eigen::VectorXd kernel_direction_at(const ModelPotential& model, const DiskBasis& basis,
                                    double lambda0) {
  const Eigen::VectorXd c0 = basis.constant_state(model.base_point());
  const auto phases = phases_at(model, basis, c0);
  const Eigen::MatrixXd B =
      bordered_matrix(eval_hessian(model, basis, c0, lambda0), phases);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B);
  Eigen::Index best = 0;
  es.eigenvalues().cwiseAbs().minCoeff(&best);
  Eigen::VectorXd v = es.eigenvectors().col(best).head(basis.size());
  const double norm = v.norm();
  if (norm < 1e-8)
    throw ConvergenceError("kernel_direction_at: no kernel content at lambda0=" +
                           std::to_string(lambda0));
  v /= norm;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-8) {
      if (v[i] < 0) v = -v;
      break;
    }
  }
  return v;
}

std::optional<Branch> switch_branch(const ModelPotential& model, const DiskBasis& basis,
                                    double lambda0, const Eigen::VectorXd& kernel_direction,
                                    const std::vector<double>& amplitudes,
                                    const StepPolicy& policy, std::string* error) {
  const Eigen::VectorXd c0 = basis.constant_state(model.base_point());
  if (kernel_direction.size() != basis.size())
    throw DomainError("switch_branch: direction size mismatch");
  std::string reasons;

  for (const double amplitude : amplitudes) {
    if (!(amplitude > 0.0)) {
      reasons += "amplitude " + std::to_string(amplitude) + " rejected (degenerate seed); ";
      continue;
    }
    try {
      Branch branch;
      branch.kind = BranchKind::bifurcating;
      branch.origin = {lambda0, 0};

      // First point: pin the displacement along the kernel direction and let
      // lambda move.
      const Eigen::VectorXd seed = c0 + amplitude * kernel_direction;
      auto first = correct_extended(model, basis, seed, lambda0, seed, lambda0,
                                    kernel_direction, 0.0, phases_at(model, basis, seed), {});
      if (orbit_distance(model, basis, first.coeffs) < std::max(1e-8, 0.05 * amplitude))
        throw ConvergenceError("collapsed back to the trivial orbit");
      branch.points.push_back(make_point(model, basis, first));

      Eigen::VectorXd prev_c = c0;
      double prev_lambda = lambda0;
      Eigen::VectorXd cur_c = first.coeffs;
      double cur_lambda = first.lambda;

      double h = policy.initial;
      int successes = 0;
      const int target = 12;
      while (static_cast<int>(branch.points.size()) < target) {
        Eigen::VectorXd t_c = cur_c - prev_c;
        double t_l = cur_lambda - prev_lambda;
        const double t_norm = std::sqrt(t_c.squaredNorm() + t_l * t_l);
        if (t_norm < 1e-14) break;
        t_c /= t_norm;
        t_l /= t_norm;
        const Eigen::VectorXd pred_c = cur_c + h * t_c;
        const double pred_l = cur_lambda + h * t_l;
        try {
          auto next = correct_extended(model, basis, pred_c, pred_l, pred_c, pred_l, t_c, t_l,
                                       phases_at(model, basis, pred_c), {});
          branch.points.push_back(make_point(model, basis, next));
          prev_c = std::move(cur_c);
          prev_lambda = cur_lambda;
          cur_c = next.coeffs;
          cur_lambda = next.lambda;
          if (++successes >= policy.grow_after) {
            h = std::min(h * policy.grow, policy.max_step);
            successes = 0;
          }
        } catch (const ConvergenceError&) {
          h *= policy.shrink;
          successes = 0;
          if (h < policy.min_step) break;
        }
      }
      if (static_cast<int>(branch.points.size()) >= 10) return branch;
      reasons += "amplitude " + std::to_string(amplitude) + ": only " +
                 std::to_string(branch.points.size()) + " points; ";
    } catch (const ConvergenceError& e) {
      reasons += "amplitude " + std::to_string(amplitude) + ": " + e.what() + "; ";
    }
  }
  if (error) *error = "all seeds failed at lambda0=" + std::to_string(lambda0) + ": " + reasons;
  return std::nullopt;
}

void write_branches_csv(std::ostream& out, const std::vector<Branch>& branches,
                        const Eigen::VectorXd& trivial_coeffs) {
  std::string text =
      "branch_id,kind,lambda,residual,min_singular,radial_energy_fraction,dominant_degree,"
      "coeff_norm\n";
  int id = 0;
  for (const auto& branch : branches) {
    const char* kind = branch.kind == BranchKind::trivial ? "trivial" : "bifurcating";
    for (const auto& pt : branch.points)
      append_csv_row(text, id, kind, pt, (pt.coeffs - trivial_coeffs).norm());
    ++id;
  }
  out << text;
}

void write_states_json(std::ostream& out, const std::vector<Branch>& branches) {
  nlohmann::json doc;
  doc["version"] = 1;
  auto& list = doc["branches"] = nlohmann::json::array();
  for (const auto& branch : branches) {
    nlohmann::json b;
    b["kind"] = branch.kind == BranchKind::trivial ? "trivial" : "bifurcating";
    if (branch.origin) b["origin_lambda"] = branch.origin->first;
    auto& pts = b["points"] = nlohmann::json::array();
    for (const auto& pt : branch.points) {
      nlohmann::json p;
      p["lambda"] = pt.lambda;
      p["residual"] = pt.residual_norm;
      p["coeffs"] = std::vector<double>(pt.coeffs.data(), pt.coeffs.data() + pt.coeffs.size());
      pts.push_back(std::move(p));
    }
    list.push_back(std::move(b));
  }
  out << doc.dump() << '\n';
}

}  // namespace orbitbif
