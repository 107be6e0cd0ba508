// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every tolerance is pinned here, in code.

#include <Eigen/Dense>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "orbitbif/bifurcation_classifier.hpp"
#include "orbitbif/commands.hpp"
#include "orbitbif/galerkin_verifier.hpp"
#include "support/assembly_oracle.hpp"
#include "support/hp_bessel.hpp"

using namespace orbitbif;

namespace {

int failures = 0;

class Criterion {
 public:
  Criterion(int index, std::string title)
      : index_(index), title_(std::move(title)), start_(std::chrono::steady_clock::now()) {}

  void finish(bool pass, const std::string& detail = "") {
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    std::printf("%s criterion %d (%s)%s%s [%.2fs]\n", pass ? "PASS" : "FAIL", index_,
                title_.c_str(), detail.empty() ? "" : ": ", detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++failures;
  }

  template <typename Fn>
  void run(Fn&& fn) {
    try {
      std::string detail;
      const bool ok = fn(detail);
      finish(ok, detail);
    } catch (const std::exception& e) {
      finish(false, std::string("exception: ") + e.what());
    }
  }

 private:
  int index_;
  std::string title_;
  std::chrono::steady_clock::time_point start_;
};

Eigen::MatrixXd random_symmetric(int m, std::mt19937& rng, double scale = 2.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  Eigen::MatrixXd A(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) A(i, j) = A(j, i) = dist(rng);
  return A;
}

// Direct factorial-formula route, independent integer arithmetic.
long long harmonic_dim_oracle(int N, int l) {
  if (N == 2) return l == 0 ? 1 : 2;
  unsigned long long rising = 1;  // (N-3+l)! / l! = (l+1) * ... * (l+N-3)
  for (int i = l + 1; i <= N - 3 + l; ++i) rising *= i;
  unsigned long long fact = 1;  // (N-2)!
  for (int i = 2; i <= N - 2; ++i) fact *= i;
  const unsigned long long num = rising * (2ull * l + N - 2);
  return static_cast<long long>(num / fact);
}

double first_degree_beta(const SpectrumTable& eigs, int l) {
  for (const auto& e : eigs.entries)
    if (e.degree_l == l && e.radial_index_m == (l == 0 ? 1 : 1)) return e.beta();
  throw std::runtime_error("degree not present in the table");
}

bool classify_level(const Eigen::MatrixXd& A, int N, double lo, double hi, double beta_max,
                    ClassificationRecord& out) {
  const auto spec = matrix_spectrum(A);
  const auto eigs = eigenvalues_up_to(N, beta_max);
  const auto cands = lambda_candidates(spec, eigs, lo, hi);
  if (cands.size() != 1) return false;
  out = classify(cands[0], spec, eigs);
  return true;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

}  // namespace

int main() {
  // 1. Dimension formula against the factorial oracle.
  Criterion c1(1, "harmonic dimension formula");
  c1.run([](std::string& detail) {
    int checked = 0;
    for (int N = 2; N <= 6; ++N) {
      for (int l = 0; l <= 20; ++l) {
        if (harmonic_dim(N, l) != harmonic_dim_oracle(N, l)) {
          detail = "mismatch at N=" + std::to_string(N) + " l=" + std::to_string(l);
          return false;
        }
        ++checked;
      }
    }
    detail = std::to_string(checked) + " pairs, exact";
    return true;
  });

  // 2. Root accuracy against the extended-precision sign-scan oracle.
  Criterion c2(2, "radial-condition roots to 1e-10");
  c2.run([](std::string& detail) {
    double worst = 0.0;
    for (int N : {2, 3}) {
      for (int l = 0; l <= 10; ++l) {
        const auto got = neumann_roots(N, l, 10);  // cold: no cache
        const auto want = hp::radial_roots<hp::real50>(N, l, 10);
        for (int m = 0; m < 10; ++m) {
          worst = std::max(worst, std::abs(got[m] - want[m]));
          if (std::abs(got[m] - want[m]) > 1e-10) {
            detail = "N=" + std::to_string(N) + " l=" + std::to_string(l) +
                     " m=" + std::to_string(m + 1);
            return false;
          }
        }
      }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "220 roots, worst |error| %.2e", worst);
    detail = buf;
    return true;
  });

  // 3. Operator spectrum identity and Morse index against brute force.
  Criterion c3(3, "operator spectrum vs assembled matrix");
  c3.run([](std::string& detail) {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> lam_dist(-3.0, 3.0);
    for (int rep = 0; rep < 50; ++rep) {
      const int N = rep % 2 == 0 ? 2 : 3;
      const int m = 1 + static_cast<int>(rng() % 5);
      const auto A = random_symmetric(m, rng);
      const double lambda = lam_dist(rng);
      const auto spec = matrix_spectrum(A);
      const double amax = std::max(std::abs(spec.min_alpha()), std::abs(spec.max_alpha()));
      const auto eigs = eigenvalues_up_to(N, 4.0 * std::abs(lambda) * amax + 12.0);

      std::vector<double> got;
      for (const auto& v : spectrum_id_minus_L(spec, eigs, lambda))
        got.insert(got.end(), v.multiplicity, v.value);
      std::sort(got.begin(), got.end());
      const auto want = assembly::eigenvalues(A, eigs, lambda);
      if (got.size() != want.size()) {
        detail = "multiset size mismatch at rep " + std::to_string(rep);
        return false;
      }
      for (std::size_t i = 0; i < got.size(); ++i) {
        if (std::abs(got[i] - want[i]) > 1e-10) {
          detail = "value mismatch at rep " + std::to_string(rep);
          return false;
        }
      }
      if (morse_index(spec, eigs, lambda) != assembly::negative_count(A, eigs, lambda)) {
        detail = "Morse index mismatch at rep " + std::to_string(rep);
        return false;
      }
    }
    detail = "50 randomized instances";
    return true;
  });

  // 4. The five worked scenarios, exact boolean match.
  Criterion c4(4, "worked classification scenarios");
  c4.run([](std::string& detail) {
    ClassificationRecord rec;

    // Single simple coupling eigenvalue crossing a rotational eigenspace on
    // the disk: global bifurcation with symmetry breaking.
    if (!classify_level(Eigen::MatrixXd::Identity(1, 1), 2, 3.0, 4.0, 40.0, rec)) return false;
    if (!(rec.c1 && rec.global_bifurcation &&
          rec.symmetry_breaking == SymmetryBreaking::yes && !rec.radial_only)) {
      detail = "scenario 1";
      return false;
    }

    // Several eigenvalues crossing rotational eigenspaces at one level.
    {
      const auto eigs = eigenvalues_up_to(2, 40.0);
      const double b11 = first_degree_beta(eigs, 1);
      const double b21 = first_degree_beta(eigs, 2);
      if (!classify_level(Eigen::Vector2d(b11, b21).asDiagonal(), 2, 0.9, 1.1, 40.0, rec))
        return false;
      if (!(rec.c1 && rec.global_bifurcation &&
            rec.symmetry_breaking == SymmetryBreaking::yes)) {
        detail = "scenario 2";
        return false;
      }
    }

    // Same phenomenon on the 3-ball.
    {
      const auto eigs3 = eigenvalues_up_to(3, 40.0);
      const double b11 = first_degree_beta(eigs3, 1);
      if (!classify_level(Eigen::MatrixXd::Identity(1, 1), 3, b11 - 0.3, b11 + 0.3, 40.0, rec))
        return false;
      if (!(rec.c1 && rec.global_bifurcation &&
            rec.symmetry_breaking == SymmetryBreaking::yes)) {
        detail = "scenario 3";
        return false;
      }
    }

    // Crossing through a radial (degree-0) eigenvalue with odd multiplicity:
    // global bifurcation, nearby solutions all radial.
    {
      const auto eigs = eigenvalues_up_to(2, 40.0);
      const double b01 = first_degree_beta(eigs, 0);
      if (!classify_level(Eigen::MatrixXd::Identity(1, 1), 2, b01 - 0.4, b01 + 0.4, 40.0, rec))
        return false;
      if (!(rec.c2 && rec.global_bifurcation && rec.radial_only &&
            rec.symmetry_breaking == SymmetryBreaking::not_applicable)) {
        detail = "scenario 4";
        return false;
      }
    }

    // Level zero: odd signature is global; even nonzero signature is a
    // local-only record.
    if (!classify_level(Eigen::MatrixXd::Identity(1, 1), 2, -0.5, 0.5, 20.0, rec)) return false;
    if (!(rec.c3 && rec.global_bifurcation && rec.local_bifurcation && rec.radial_only)) {
      detail = "scenario 5 (odd)";
      return false;
    }
    if (!classify_level(Eigen::MatrixXd::Identity(2, 2), 2, -0.5, 0.5, 20.0, rec)) return false;
    if (!(rec.thm0 && !rec.c3 && rec.local_bifurcation && !rec.global_bifurcation)) {
      detail = "scenario 5 (even)";
      return false;
    }
    detail = "5 scenarios, exact";
    return true;
  });

  // 5. Euler-ring coherence on the disk.
  Criterion c5(5, "Euler ring axioms and index-change witness");
  c5.run([](std::string& detail) {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> coeff(-10, 10);
    std::uniform_int_distribution<int> index(1, 20);
    auto random_element = [&]() {
      EulerElement e = EulerElement::unit().scaled(coeff(rng));
      for (int i = 0; i < 3; ++i)
        e = ring_add(e, EulerElement::generator(index(rng)).scaled(coeff(rng)));
      return e;
    };
    auto random_rep = [&]() {
      So2RepDecomposition rep;
      rep.trivial_dim = static_cast<int>(rng() % 5);
      for (int i = 0; i < 3; ++i) {
        const int c = static_cast<int>(rng() % 4);
        if (c > 0) rep.rotation_counts[1 + static_cast<int>(rng() % 8)] += c;
      }
      return rep;
    };
    for (int rep = 0; rep < 100; ++rep) {
      const auto a = random_element(), b = random_element(), c = random_element();
      if (!(ring_add(a, b) == ring_add(b, a)) || !(ring_mul(a, b) == ring_mul(b, a)) ||
          !(ring_mul(ring_mul(a, b), c) == ring_mul(a, ring_mul(b, c))) ||
          !(ring_mul(a, ring_add(b, c)) == ring_add(ring_mul(a, b), ring_mul(a, c))) ||
          !(ring_mul(EulerElement::unit(), a) == a)) {
        detail = "ring axiom failed";
        return false;
      }
      const auto v = random_rep(), w = random_rep();
      So2RepDecomposition sum;
      sum.trivial_dim = v.trivial_dim + w.trivial_dim;
      sum.rotation_counts = v.rotation_counts;
      for (const auto& [k, cc] : w.rotation_counts) sum.rotation_counts[k] += cc;
      if (!(chi_sphere(sum) == ring_mul(chi_sphere(v), chi_sphere(w)))) {
        detail = "smash compatibility failed";
        return false;
      }
    }
    int candidates_checked = 0;
    for (int instance = 0; instance < 30; ++instance) {
      const int m = 1 + static_cast<int>(rng() % 3);
      const auto A = random_symmetric(m, rng);
      const auto spec = matrix_spectrum(A);
      const double amax = std::max(std::abs(spec.min_alpha()), std::abs(spec.max_alpha()));
      if (amax < 0.1) continue;
      const auto eigs = eigenvalues_up_to(2, 5.0 * amax + 30.0);
      for (const auto& cand : lambda_candidates(spec, eigs, -4.5, 4.5)) {
        const auto rec = classify(cand, spec, eigs);
        if (cand.lambda0 != 0.0) {
          if (index_change_witness(cand, spec, eigs) != (rec.c1 || rec.c2)) {
            detail = "witness disagrees at lambda0=" + std::to_string(cand.lambda0);
            return false;
          }
          ++candidates_checked;
        }
      }
    }
    detail = "100 ring instances, " + std::to_string(candidates_checked) + " witness candidates";
    return true;
  });

  // 6. Numerical verification on the disk at the stated cutoff.
  Criterion c6(6, "disk verification of the soft-ring family");
  c6.run([](std::string& detail) {
    const auto model = ModelPotential::radial_family({0.125, -0.25, 0.125}, 1.0);
    const auto basis = DiskBasis::build(8, 8, 2, model.gradient_degree());
    const auto spec = matrix_spectrum(model.linearization());
    const auto eigs = eigenvalues_up_to(2, 40.0);
    const auto cands = lambda_candidates(spec, eigs, 0.1, 16.0);

    const auto result = continue_trivial_and_detect(model, basis, 0.1, 16.0);
    // Every representable candidate must be detected at the stated tolerance.
    for (const auto& cand : cands) {
      bool representable = false;
      for (const auto& e : eigs.entries)
        if (std::abs(e.beta() - cand.lambda0) <= 1e-9 * (1.0 + cand.lambda0) &&
            e.degree_l <= 8 && e.radial_index_m <= 8)
          representable = true;
      if (!representable) continue;
      bool found = false;
      for (const double d : result.detections)
        if (std::abs(d - cand.lambda0) <= 1e-6 * (1.0 + std::abs(cand.lambda0))) found = true;
      if (!found) {
        detail = "level " + std::to_string(cand.lambda0) + " not detected";
        return false;
      }
    }
    if (result.detections.size() != cands.size()) {
      detail = "detection count " + std::to_string(result.detections.size()) + " vs " +
               std::to_string(cands.size()) + " candidates";
      return false;
    }

    // Branch at the first degree-1 crossing: symmetry breaking observed.
    const double b11 = first_degree_beta(eigs, 1);
    const double b01 = first_degree_beta(eigs, 0);
    for (const double lambda0 : {b11, b01}) {
      double detected = 0.0;
      for (const double d : result.detections)
        if (std::abs(d - lambda0) <= 1e-6 * (1.0 + lambda0)) detected = d;
      const auto dir = kernel_direction_at(model, basis, detected);
      std::string err;
      const auto branch = switch_branch(model, basis, detected, dir, kDefaultAmplitudes, {}, &err);
      if (!branch) {
        detail = "branch at " + std::to_string(lambda0) + ": " + err;
        return false;
      }
      const double fraction = branch->points.front().isotropy.radial_energy_fraction;
      if (lambda0 == b11 && !(fraction < 0.1)) {
        detail = "degree-1 branch stayed radial (fraction " + std::to_string(fraction) + ")";
        return false;
      }
      if (lambda0 == b01 && !(fraction > 0.999)) {
        detail = "degree-0 branch broke symmetry (fraction " + std::to_string(fraction) + ")";
        return false;
      }
    }
    detail = std::to_string(result.detections.size()) + " detections, both branch isotropies";
    return true;
  });

  // 7. Finite-difference fidelity of the discretized gradient and Hessian.
  Criterion c7(7, "gradient and Hessian finite-difference checks");
  c7.run([](std::string& detail) {
    const auto model = ModelPotential::radial_family({0.125, -0.25, 0.125}, 1.0);
    const auto basis = DiskBasis::build(2, 2, 2, model.gradient_degree());
    std::mt19937 rng(7);
    std::normal_distribution<double> gauss;
    const auto c0 = basis.constant_state(model.base_point());
    const double h = 1e-5;
    for (int rep = 0; rep < 20; ++rep) {
      Eigen::VectorXd c = c0;
      for (Eigen::Index i = 0; i < c.size(); ++i) c[i] += 0.25 * gauss(rng);
      const double lambda = 0.4 + 0.37 * rep;
      const Eigen::VectorXd g = eval_gradient(model, basis, c, lambda);
      for (int probe = 0; probe < 3; ++probe) {
        Eigen::VectorXd e(c.size());
        for (Eigen::Index i = 0; i < e.size(); ++i) e[i] = gauss(rng);
        e.normalize();
        const double fd = (eval_functional(model, basis, c + h * e, lambda) -
                           eval_functional(model, basis, c - h * e, lambda)) /
                          (2.0 * h);
        const double ge = g.dot(e);
        if (std::abs(fd - ge) > 1e-6 * (1.0 + std::abs(ge))) {
          detail = "gradient probe failed at rep " + std::to_string(rep);
          return false;
        }
      }
      const Eigen::MatrixXd H = eval_hessian(model, basis, c, lambda);
      for (int probe = 0; probe < 2; ++probe) {
        const int j = static_cast<int>(rng() % c.size());
        Eigen::VectorXd e = Eigen::VectorXd::Zero(c.size());
        e[j] = h;
        const Eigen::VectorXd fd = (eval_gradient(model, basis, c + e, lambda) -
                                    eval_gradient(model, basis, c - e, lambda)) /
                                   (2.0 * h);
        if ((fd - H.col(j)).cwiseAbs().maxCoeff() >
            1e-5 * (1.0 + H.col(j).cwiseAbs().maxCoeff())) {
          detail = "Hessian column failed at rep " + std::to_string(rep);
          return false;
        }
      }
    }
    detail = "20 random states";
    return true;
  });

  // 8. Byte-identical verify output across runs and thread counts.
  Criterion c8(8, "deterministic verify output");
  c8.run([](std::string& detail) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "orbitbif_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    {
      std::ofstream cfg(dir / "cfg.json");
      cfg << R"({
        "version": 1, "dimension_N": 2,
        "model": {"f_coefficients": [0.125, -0.25, 0.125], "r0": 1.0},
        "lambda_range": [0.1, 16.0],
        "cutoffs": {"l_max": 4, "m_max": 3, "beta_max": 40.0},
        "output": {"format": "csv", "path": "branches.csv"}
      })";
    }
    auto run = [&](const std::string& extra) {
      const std::string cmd = "cd " + dir.string() + " && " + ORBITBIF_CLI_PATH +
                              " verify --config cfg.json --cache roots.json " + extra +
                              " > /dev/null 2> /dev/null";
      return std::system(cmd.c_str());
    };
    if (run("") != 0) {
      detail = "first run failed";
      return false;
    }
    const std::string first = slurp(dir / "branches.csv");
    if (run("") != 0 || slurp(dir / "branches.csv") != first) {
      detail = "second run differs";
      return false;
    }
    if (run("--threads 7") != 0 || slurp(dir / "branches.csv") != first) {
      detail = "threaded run differs";
      return false;
    }
    detail = "3 runs byte-identical (" + std::to_string(first.size()) + " bytes)";
    return true;
  });

  if (failures == 0) std::printf("all acceptance criteria passed\n");
  return failures;
}
