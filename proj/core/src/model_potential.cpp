#include "orbitbif/model_potential.hpp"

#include <cmath>
#include <string>

#include "orbitbif/bifurcation_classifier.hpp"

namespace orbitbif {

namespace {

double poly_eval(const std::vector<double>& c, double s) {
  double v = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * s + c[i];
  return v;
}

std::vector<double> poly_derivative(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(i * c[i]);
  if (d.empty()) d.push_back(0.0);
  return d;
}

}  // namespace

int Monomial::degree() const {
  int d = 0;
  for (const int e : exponents) d += e;
  return d;
}

ModelPotential ModelPotential::quadratic_plus_remainder(const Eigen::MatrixXd& A,
                                                        const Eigen::VectorXd& u0,
                                                        std::vector<Monomial> remainder,
                                                        int orbit_dim) {
  ModelPotential mp;
  mp.A_ = 0.5 * (A + A.transpose());
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + A.cwiseAbs().maxCoeff()))
    throw AsymmetryError("ModelPotential: coupling matrix must be symmetric");
  mp.u0_ = u0;
  mp.remainder_ = std::move(remainder);
  mp.orbit_dim_ = orbit_dim;
  int deg = 2;
  for (const auto& mono : mp.remainder_) {
    if (static_cast<int>(mono.exponents.size()) != u0.size())
      throw ConfigError("ModelPotential: monomial arity does not match the component count");
    if (mono.degree() < 3)
      throw ConfigError("ModelPotential: remainder terms must have degree >= 3");
    deg = std::max(deg, mono.degree());
  }
  mp.gradient_degree_ = deg - 1;
  mp.validate();
  return mp;
}

ModelPotential ModelPotential::radial_family(std::vector<double> f_coefficients, double r0) {
  if (!(r0 > 0.0)) throw ConfigError("ModelPotential: r0 must be positive");
  if (f_coefficients.size() < 2)
    throw ConfigError("ModelPotential: the radial polynomial needs degree >= 1");
  ModelPotential mp;
  mp.is_radial_family_ = true;
  mp.component_rotation_ = true;
  mp.orbit_dim_ = 1;
  mp.f_coefficients_ = std::move(f_coefficients);
  mp.u0_ = Eigen::Vector2d(std::sqrt(r0), 0.0);

  const auto fp = poly_derivative(mp.f_coefficients_);
  const auto fpp = poly_derivative(fp);
  if (std::abs(poly_eval(fp, r0)) > 1e-12)
    throw ConfigError("ModelPotential: f'(r0) = " + std::to_string(poly_eval(fp, r0)) +
                      "; the base circle is not critical");
  mp.A_ = 4.0 * poly_eval(fpp, r0) * mp.u0_ * mp.u0_.transpose();
  mp.gradient_degree_ = 2 * (static_cast<int>(mp.f_coefficients_.size()) - 1) - 1;

  // Analytic Hessian against central finite differences of the gradient.
  const double h = 1e-5;
  Eigen::MatrixXd fd(2, 2);
  for (int j = 0; j < 2; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(2);
    e[j] = h;
    fd.col(j) = (mp.gradient(mp.u0_ + e) - mp.gradient(mp.u0_ - e)) / (2.0 * h);
  }
  if ((fd - mp.A_).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + mp.A_.cwiseAbs().maxCoeff()) + 1e-8)
    throw InternalConsistencyError("ModelPotential: analytic Hessian disagrees with differences");
  mp.validate();
  return mp;
}

void ModelPotential::validate() const {
  if (gradient(u0_).norm() > 1e-12)
    throw ConfigError("ModelPotential: the base point is not a critical point");
  if (!nondegenerate_orbit_check(A_, orbit_dim_))
    throw ConfigError(
        "ModelPotential: degenerate critical orbit (kernel of the Hessian does not match the "
        "orbit dimension)");
}

double ModelPotential::value(const Eigen::VectorXd& u) const {
  if (is_radial_family_) return poly_eval(f_coefficients_, u.squaredNorm());
  const Eigen::VectorXd w = u - u0_;
  double v = 0.5 * w.dot(A_ * w);
  for (const auto& mono : remainder_) {
    double term = mono.coeff;
    for (int i = 0; i < w.size(); ++i)
      for (int p = 0; p < mono.exponents[i]; ++p) term *= w[i];
    v += term;
  }
  return v;
}

Eigen::VectorXd ModelPotential::gradient(const Eigen::VectorXd& u) const {
  if (is_radial_family_) {
    const auto fp = poly_derivative(f_coefficients_);
    return 2.0 * poly_eval(fp, u.squaredNorm()) * u;
  }
  const Eigen::VectorXd w = u - u0_;
  Eigen::VectorXd g = A_ * w;
  for (const auto& mono : remainder_) {
    for (int i = 0; i < w.size(); ++i) {
      if (mono.exponents[i] == 0) continue;
      double term = mono.coeff * mono.exponents[i];
      for (int j = 0; j < w.size(); ++j) {
        const int e = mono.exponents[j] - (j == i ? 1 : 0);
        for (int p = 0; p < e; ++p) term *= w[j];
      }
      g[i] += term;
    }
  }
  return g;
}

Eigen::MatrixXd ModelPotential::hessian(const Eigen::VectorXd& u) const {
  if (is_radial_family_) {
    const auto fp = poly_derivative(f_coefficients_);
    const auto fpp = poly_derivative(fp);
    const double s = u.squaredNorm();
    return 2.0 * poly_eval(fp, s) * Eigen::MatrixXd::Identity(2, 2) +
           4.0 * poly_eval(fpp, s) * u * u.transpose();
  }
  const Eigen::VectorXd w = u - u0_;
  Eigen::MatrixXd H = A_;
  for (const auto& mono : remainder_) {
    for (int i = 0; i < w.size(); ++i) {
      for (int j = 0; j < w.size(); ++j) {
        int fi = mono.exponents[i], fj = mono.exponents[j];
        double factor = mono.coeff;
        if (i == j) {
          if (fi < 2) continue;
          factor *= fi * (fi - 1);
          fi -= 2;
        } else {
          if (fi < 1 || fj < 1) continue;
          factor *= fi * fj;
          fi -= 1;
          fj -= 1;
        }
        for (int k = 0; k < w.size(); ++k) {
          int e = mono.exponents[k];
          if (k == i) e = fi;
          if (k == j && k != i) e = fj;
          for (int p = 0; p < e; ++p) factor *= w[k];
        }
        H(i, j) += factor;
      }
    }
  }
  return 0.5 * (H + H.transpose());
}

}  // namespace orbitbif
