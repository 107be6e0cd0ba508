#include "orbitbif/neumann_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "orbitbif/parallel.hpp"
#include "orbitbif/special_functions.hpp"

namespace orbitbif {

namespace {

constexpr double kScanStep = 0.05;
constexpr double kBisectWidth = 1e-13;
constexpr double kResidualTol = 1e-11;
constexpr double kScanLimit = 995.0;  // stay inside the Bessel evaluation box

double boundary_derivative(int N, int l, double x) {
  // g(x) = J'(x) - c/x J(x), c = (N-2)/2; g' uses J'' from the Bessel ODE.
  const auto order = BesselOrder::for_ball(N, l);
  const double nu = order.value();
  const double c = 0.5 * (N - 2);
  const double j = bessel_j(order, x);
  const double jp = bessel_j_prime(order, x);
  const double jpp = -jp / x - (1.0 - nu * nu / (x * x)) * j;
  return jpp + c / (x * x) * j - c / x * jp;
}

double refine_root(int N, int l, double lo, double hi, double flo) {
  for (int it = 0; it < 200 && hi - lo > kBisectWidth; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = radial_boundary_value(N, l, mid);
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((flo < 0) == (fm < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double root = 0.5 * (lo + hi);
  // One Newton polish; keep it only if it improves the residual.
  const double g = radial_boundary_value(N, l, root);
  const double gp = boundary_derivative(N, l, root);
  if (gp != 0.0) {
    const double polished = root - g / gp;
    if (polished > lo - kScanStep && polished < hi + kScanStep &&
        std::abs(radial_boundary_value(N, l, polished)) < std::abs(g)) {
      root = polished;
    }
  }
  if (std::abs(radial_boundary_value(N, l, root)) > kResidualTol) {
    throw ConvergenceError("neumann_roots: residual above tolerance at N=" +
                           std::to_string(N) + " l=" + std::to_string(l) +
                           " x~" + std::to_string(root));
  }
  return root;
}

// Scan g for sign changes until `stop(roots)` says enough; step 0.05 is far
// below the asymptotic ~pi spacing of consecutive roots.
std::vector<double> scan_roots(int N, int l,
                               const std::function<bool(const std::vector<double>&)>& stop,
                               RootCache* cache) {
  std::vector<double> roots;
  double a = kScanStep;
  double fa = radial_boundary_value(N, l, a);
  while (!stop(roots)) {
    if (fa == 0.0) {  // grid point landed exactly on a root
      roots.push_back(a);
      if (cache) cache->store(l, static_cast<int>(roots.size()), a, 0.0);
      a += 1e-7;
      fa = radial_boundary_value(N, l, a);
      continue;
    }
    const double b = a + kScanStep;
    if (b > kScanLimit)
      throw ConvergenceError("neumann_roots: scan limit reached at N=" + std::to_string(N) +
                             " l=" + std::to_string(l));
    const double fb = radial_boundary_value(N, l, b);
    if (fb != 0.0 && (fa < 0) != (fb < 0)) {
      roots.push_back(refine_root(N, l, a, b, fa));
      if (cache) {
        cache->store(l, static_cast<int>(roots.size()), roots.back(),
                     radial_boundary_value(N, l, roots.back()));
      }
    }
    a = b;
    fa = fb;
  }
  return roots;
}

}  // namespace

double radial_boundary_value(int N, int l, double x) {
  if (x <= 0.0)
    throw DomainError("radial_boundary_value: x must be positive (x=" + std::to_string(x) + ")");
  const auto order = BesselOrder::for_ball(N, l);
  const double jp = bessel_j_prime(order, x);
  if (N == 2) return jp;
  return jp - 0.5 * (N - 2) / x * bessel_j(order, x);
}

std::vector<double> neumann_roots(int N, int l, int m_max, RootCache* cache) {
  if (N < 2) throw DomainError("neumann_roots: dimension must be >= 2");
  if (l < 0 || l > 60) throw DomainError("neumann_roots: degree out of range");
  if (m_max < 1 || m_max > 200) throw DomainError("neumann_roots: m_max out of range");

  if (cache) {
    std::vector<double> cached;
    cached.reserve(m_max);
    for (int m = 1; m <= m_max; ++m) {
      const auto hit = cache->lookup(l, m);
      if (!hit) break;
      cached.push_back(*hit);
    }
    if (static_cast<int>(cached.size()) == m_max) return cached;
  }
  auto roots = scan_roots(
      N, l, [m_max](const std::vector<double>& r) { return static_cast<int>(r.size()) >= m_max; },
      cache);
  return roots;
}

long long harmonic_dim(int N, int l) {
  if (N < 2 || l < 0) throw DomainError("harmonic_dim: invalid arguments");
  if (N == 2) return l == 0 ? 1 : 2;
  if (N > 16 || l > 120) throw DomainError("harmonic_dim: out of the supported integer range");
  // (2l+N-2) * binom(l+N-3, N-3) / (N-2); the binomial is built incrementally
  // so every intermediate value is an exact integer.
  unsigned long long binom = 1;
  for (int i = 1; i <= N - 3; ++i) binom = binom * (l + i) / i;
  const unsigned long long num = binom * (2ull * l + N - 2);
  if (num % (N - 2) != 0)
    throw InternalConsistencyError("harmonic_dim: non-integer dimension");
  return static_cast<long long>(num / (N - 2));
}

SpectrumTable eigenvalues_up_to(int N, double beta_max, RootCache* cache) {
  if (N < 2) throw DomainError("eigenvalues_up_to: dimension must be >= 2");
  if (!(beta_max > 0.0) || beta_max > 1e6)
    throw DomainError("eigenvalues_up_to: beta_max must lie in (0, 1e6]");
  const double x_max = std::sqrt(beta_max);

  SpectrumTable table;
  table.dimension_N = N;
  table.beta_max = beta_max;
  table.entries.push_back({N, 0, 0, 0.0, static_cast<int>(harmonic_dim(N, 0))});

  // Find the scan cutoff: the first degree l >= 1 whose smallest root exceeds
  // x_max. With the convention x_{00} = 0 the smallest element of each root
  // family increases with the degree (for l >= 1 the smallest positive roots
  // are increasing; re-checked here, not assumed). Degree 0 itself is always
  // enumerated because its smallest element is the conventional 0.
  int l_stop = 1;
  double prev_first = 0.0;
  for (int l = 1; l <= 60; ++l) {
    const double first = neumann_roots(N, l, 1, cache)[0];
    if (first <= prev_first)
      throw InternalConsistencyError(
          "eigenvalues_up_to: smallest positive roots are not increasing with the degree");
    prev_first = first;
    if (first > x_max) {
      l_stop = l;
      break;
    }
    if (l == 60)
      throw DomainError("eigenvalues_up_to: beta_max needs degrees beyond the supported 60");
  }

  // Degrees 0..l_stop-1 contribute; enumerate their roots as a parallel map
  // and merge deterministically afterwards.
  const auto per_degree = parallel_map<std::vector<double>>(
      static_cast<std::size_t>(l_stop), [&](std::size_t l) {
        return scan_roots(
            N, static_cast<int>(l),
            [x_max](const std::vector<double>& r) { return !r.empty() && r.back() > x_max; },
            cache);
      });
  for (int l = 0; l < l_stop; ++l) {
    const int dim = static_cast<int>(harmonic_dim(N, l));
    int m = 0;
    double prev = 0.0;
    for (const double x : per_degree[l]) {
      ++m;
      if (x * x > beta_max) break;
      if (x <= prev)
        throw InternalConsistencyError("eigenvalues_up_to: roots not increasing in m");
      prev = x;
      table.entries.push_back({N, l, m, x, dim});
    }
  }
  std::sort(table.entries.begin(), table.entries.end(),
            [](const NeumannEigenvalue& a, const NeumannEigenvalue& b) {
              if (a.beta() != b.beta()) return a.beta() < b.beta();
              return a.degree_l < b.degree_l;
            });
  // Report near-coincident eigenvalues across different degrees.
  for (std::size_t i = 1; i < table.entries.size(); ++i) {
    const auto& p = table.entries[i - 1];
    const auto& q = table.entries[i];
    if (p.degree_l != q.degree_l &&
        std::abs(q.root_x - p.root_x) <= 1e-9 * (1.0 + q.root_x)) {
      table.warnings.push_back("coincident eigenvalue near beta=" + std::to_string(q.beta()) +
                               " between degrees " + std::to_string(p.degree_l) + " and " +
                               std::to_string(q.degree_l) + "; eigenspaces merged");
    }
  }
  return table;
}

EigenspaceDecomposition eigenspace_decomposition(int N, double beta, double coincidence_tol,
                                                 RootCache* cache) {
  if (beta < 0.0) throw DomainError("eigenspace_decomposition: beta must be nonnegative");
  const double target = std::sqrt(beta);
  const double tol = coincidence_tol * (1.0 + target);

  EigenspaceDecomposition decomp;
  decomp.beta = beta;
  if (target <= tol) {  // the zero eigenvalue: constants only
    decomp.blocks.emplace_back(0, static_cast<int>(harmonic_dim(N, 0)));
  }
  for (int l = 0; l <= 60; ++l) {
    // Degree 0 is always inspected (its family conventionally starts at 0);
    // from degree 1 on, the increasing smallest positive roots bound the scan.
    if (l >= 1 && neumann_roots(N, l, 1, cache)[0] > target + tol) break;
    const auto roots = scan_roots(
        N, l,
        [limit = target + tol](const std::vector<double>& r) {
          return !r.empty() && r.back() > limit;
        },
        cache);
    for (const double x : roots) {
      if (std::abs(x - target) <= tol) {
        decomp.blocks.emplace_back(l, static_cast<int>(harmonic_dim(N, l)));
        break;
      }
    }
  }
  if (decomp.blocks.empty())
    throw NotAnEigenvalueError("eigenspace_decomposition: beta=" + std::to_string(beta) +
                               " matches no computed eigenvalue");
  for (const auto& [l, dim] : decomp.blocks) {
    decomp.total_dim += dim;
    if (l == 0) decomp.fixed_dim = 1;
  }
  return decomp;
}

std::vector<EigenspaceDecomposition> group_by_beta(const SpectrumTable& table,
                                                   double coincidence_tol) {
  std::vector<EigenspaceDecomposition> out;
  for (const auto& e : table.entries) {
    const bool merge = !out.empty() &&
                       std::abs(e.root_x - std::sqrt(out.back().beta)) <=
                           coincidence_tol * (1.0 + e.root_x);
    if (!merge) {
      out.push_back({e.beta(), {}, 0, 0});
    }
    auto& d = out.back();
    d.blocks.emplace_back(e.degree_l, e.harmonic_dim);
    d.total_dim += e.harmonic_dim;
    if (e.degree_l == 0) d.fixed_dim = 1;
  }
  for (auto& d : out) std::sort(d.blocks.begin(), d.blocks.end());
  return out;
}

}  // namespace orbitbif
