#include "orbitbif/operator_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace orbitbif {

namespace {

constexpr double kZeroEig = 1e-9;  // |(beta - lambda alpha)/(1+beta)| below this counts as zero

void check_cutoff(const MatrixSpectrum& spec, const SpectrumTable& eigs, double lambda,
                  const char* who) {
  const double needed = std::max({0.0, lambda * spec.max_alpha(), lambda * spec.min_alpha()});
  if (eigs.beta_max < needed * (1.0 - 1e-12)) {
    throw InsufficientCutoffError(std::string(who) +
                                  ": spectrum table ends at beta_max=" +
                                  std::to_string(eigs.beta_max) + " but lambda*alpha reaches " +
                                  std::to_string(needed));
  }
}

}  // namespace

MatrixSpectrum matrix_spectrum(const Eigen::MatrixXd& A_in, double merge_tol) {
  const auto m = A_in.rows();
  if (m < 1 || A_in.cols() != m) throw AsymmetryError("matrix_spectrum: matrix must be square");
  if (m > 64) throw DomainError("matrix_spectrum: size capped at 64");
  const double scale = std::max(1.0, A_in.cwiseAbs().maxCoeff());
  if ((A_in - A_in.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw AsymmetryError("matrix_spectrum: matrix is not symmetric within 1e-12");
  if (merge_tol < 0.0) merge_tol = 1e-9 * (1.0 + A_in.cwiseAbs().maxCoeff());

  Eigen::MatrixXd A = 0.5 * (A_in + A_in.transpose());
  Eigen::MatrixXd V = Eigen::MatrixXd::Identity(m, m);
  const double off_tol = 1e-13 * std::max(1.0, A.norm());

  // Cyclic-by-row Jacobi sweeps.
  bool converged = false;
  for (int sweep = 0; sweep < 60 && !converged; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < m; ++p)
      for (int q = p + 1; q < m; ++q) off += 2.0 * A(p, q) * A(p, q);
    if (std::sqrt(off) <= off_tol) {
      converged = true;
      break;
    }
    for (int p = 0; p < m - 1; ++p) {
      for (int q = p + 1; q < m; ++q) {
        const double apq = A(p, q);
        if (apq == 0.0) continue;
        const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // A <- J^T A J and V <- V J with the rotation in the (p,q) plane.
        for (int k = 0; k < m; ++k) {
          const double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < m; ++k) {
          const double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < m; ++k) {
          const double vkp = V(k, p), vkq = V(k, q);
          V(k, p) = c * vkp - s * vkq;
          V(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged) {
    double off = 0.0;
    for (int p = 0; p < m; ++p)
      for (int q = p + 1; q < m; ++q) off += 2.0 * A(p, q) * A(p, q);
    if (std::sqrt(off) > off_tol)
      throw ConvergenceError("matrix_spectrum: Jacobi iteration did not converge");
  }

  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return A(a, a) < A(b, b); });

  MatrixSpectrum spec;
  spec.size_m = static_cast<int>(m);
  spec.merge_tol = merge_tol;
  for (int i = 0; i < m;) {
    int j = i;
    double sum = 0.0;
    while (j < m && (j == i || A(order[j], order[j]) - A(order[j - 1], order[j - 1]) <= merge_tol)) {
      sum += A(order[j], order[j]);
      ++j;
    }
    MatrixEigenvalue entry;
    entry.multiplicity = j - i;
    entry.alpha = sum / entry.multiplicity;
    entry.vectors.resize(m, entry.multiplicity);
    for (int k = i; k < j; ++k) entry.vectors.col(k - i) = V.col(order[k]);
    if (std::abs(entry.alpha) <= merge_tol) spec.kernel_dim = entry.multiplicity;
    spec.eigenvalues.push_back(std::move(entry));
    i = j;
  }
  return spec;
}

std::vector<OperatorEigenvalue> spectrum_id_minus_L(const MatrixSpectrum& spec,
                                                    const SpectrumTable& eigs, double lambda) {
  check_cutoff(spec, eigs, lambda, "spectrum_id_minus_L");
  std::vector<OperatorEigenvalue> out;
  const auto distinct = group_by_beta(eigs);
  out.reserve(distinct.size() * spec.eigenvalues.size());
  for (const auto& d : distinct) {
    for (const auto& me : spec.eigenvalues) {
      out.push_back({(d.beta - lambda * me.alpha) / (1.0 + d.beta), d.beta, me.alpha,
                     me.multiplicity * d.total_dim});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const OperatorEigenvalue& a, const OperatorEigenvalue& b) {
              return a.value < b.value;
            });
  return out;
}

std::vector<KernelComponent> kernel_description(const MatrixSpectrum& spec,
                                                const SpectrumTable& eigs, double lambda) {
  check_cutoff(spec, eigs, lambda, "kernel_description");
  std::vector<KernelComponent> out;
  const auto distinct = group_by_beta(eigs);

  if (lambda == 0.0) {
    // sigma(0*A) = {0} with multiplicity m; it meets only beta = 0.
    out.push_back({0.0, spec.size_m, distinct.front()});
    return out;
  }
  for (const auto& me : spec.eigenvalues) {
    const double shifted = lambda * me.alpha;
    for (const auto& d : distinct) {
      if (std::abs(shifted - d.beta) <= kIntersectionTol * (1.0 + std::abs(d.beta))) {
        out.push_back({shifted, me.multiplicity, d});
        break;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const KernelComponent& a, const KernelComponent& b) {
    return a.alpha_ji < b.alpha_ji;
  });
  // Distinct alphas of A can collapse to one element of sigma(lambda A) when
  // lambda contracts their gap below the intersection tolerance; merge them.
  std::vector<KernelComponent> merged;
  for (auto& c : out) {
    if (!merged.empty() &&
        std::abs(c.alpha_ji - merged.back().alpha_ji) <=
            kIntersectionTol * (1.0 + std::abs(c.alpha_ji))) {
      merged.back().mu += c.mu;
    } else {
      merged.push_back(std::move(c));
    }
  }
  return merged;
}

int kernel_dimension(const std::vector<KernelComponent>& components) {
  int dim = 0;
  for (const auto& c : components) dim += c.mu * c.decomposition.total_dim;
  return dim;
}

int morse_index(const MatrixSpectrum& spec, const SpectrumTable& eigs, double lambda) {
  check_cutoff(spec, eigs, lambda, "morse_index");
  int index = 0;
  for (const auto& d : group_by_beta(eigs)) {
    for (const auto& me : spec.eigenvalues) {
      const double value = (d.beta - lambda * me.alpha) / (1.0 + d.beta);
      if (value < -kZeroEig) index += me.multiplicity * d.total_dim;
    }
  }
  return index;
}

}  // namespace orbitbif
