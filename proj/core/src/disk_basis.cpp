#include "orbitbif/disk_basis.hpp"

#include <cmath>

#include "orbitbif/special_functions.hpp"

namespace orbitbif {

namespace {
constexpr double kTwoPi = 6.28318530717958647692528676655900577;
}

DiskBasis DiskBasis::build(int l_max, int m_max, int m_components, int gradient_degree,
                           RootCache* cache) {
  if (l_max < 0 || l_max > 12 || m_max < 1 || m_max > 12)
    throw DomainError("DiskBasis: cutoffs outside the desk-scale box (l_max, m_max <= 12)");
  if (m_components < 1 || m_components > 4)
    throw DomainError("DiskBasis: 1 to 4 components supported");
  if (gradient_degree < 1) throw DomainError("DiskBasis: gradient degree must be >= 1");

  DiskBasis basis;
  basis.l_max_ = l_max;
  basis.m_max_ = m_max;
  basis.m_ = m_components;
  basis.gradient_degree_ = gradient_degree;

  basis.scalar_modes_.push_back({0, 0, 0, 0, 0.0, 0.0, 1.0});
  for (int m = 1; m <= m_max; ++m) {
    const double x = neumann_roots(2, 0, m, cache)[m - 1];
    basis.scalar_modes_.push_back({0, 0, m, 0, x, x * x, 1.0});
  }
  for (int l = 1; l <= l_max; ++l) {
    const auto roots = neumann_roots(2, l, m_max, cache);
    for (int m = 1; m <= m_max; ++m) {
      basis.scalar_modes_.push_back({0, l, m, 0, roots[m - 1], roots[m - 1] * roots[m - 1], 1.0});
      basis.scalar_modes_.push_back({0, l, m, 1, roots[m - 1], roots[m - 1] * roots[m - 1], 1.0});
    }
  }

  double x_max = 0.0;
  for (const auto& s : basis.scalar_modes_) x_max = std::max(x_max, s.root_x);
  // Radial rule: respect the 2*m_max+8 floor and resolve the total
  // oscillation (gradient_degree+1 factors of the highest mode). Angular
  // rule: trapezoid exact for the trigonometric content.
  const int n_r = std::max(2 * m_max + 8,
                           static_cast<int>(std::ceil(0.5 * (gradient_degree + 1) * x_max)) + 12);
  int n_phi = std::max(4 * l_max + 8, (gradient_degree + 1) * l_max + 8);

  // Norms from the run quadrature itself, so the Gram matrix is the identity
  // under this rule up to rounding.
  basis.quad_ = basis.raw_evaluate(n_r, n_phi, false);
  const int ns = basis.scalar_count();
  for (int s = 0; s < ns; ++s) {
    const double nrm2 = (basis.quad_.weights.array() *
                         (basis.quad_.values.col(s).array().square() +
                          basis.quad_.deriv_r.col(s).array().square() +
                          basis.quad_.deriv_t.col(s).array().square()))
                            .sum();
    const double c = 1.0 / std::sqrt(nrm2);
    basis.scalar_modes_[s].norm = c;
    basis.quad_.values.col(s) *= c;
    basis.quad_.deriv_r.col(s) *= c;
    basis.quad_.deriv_t.col(s) *= c;
  }

  basis.linear_factor_.resize(ns);
  for (int s = 0; s < ns; ++s) {
    const double beta = basis.scalar_modes_[s].beta;
    basis.linear_factor_[s] = beta / (1.0 + beta);
  }

  basis.entries_.reserve(static_cast<std::size_t>(ns) * m_components);
  for (int comp = 0; comp < m_components; ++comp) {
    for (int s = 0; s < ns; ++s) {
      BasisEntry e = basis.scalar_modes_[s];
      e.component = comp;
      basis.entries_.push_back(e);
    }
  }
  return basis;
}

DiskQuadrature DiskBasis::raw_evaluate(int n_r, int n_phi, bool apply_norm) const {
  const auto radial_nodes = gauss_legendre(n_r, 0.0, 1.0);
  const int ns = scalar_count();
  const int nq = n_r * n_phi;

  DiskQuadrature q;
  q.weights.resize(nq);
  q.values.resize(nq, ns);
  q.deriv_r.resize(nq, ns);
  q.deriv_t.resize(nq, ns);

  // Radial parts per scalar mode at the radial nodes.
  Eigen::MatrixXd rad(n_r, ns), drad(n_r, ns);
  for (int s = 0; s < ns; ++s) {
    const auto& mode = scalar_modes_[s];
    const auto order = BesselOrder::of_int(mode.degree_l);
    for (int i = 0; i < n_r; ++i) {
      const double r = radial_nodes[i].x;
      if (mode.degree_l == 0 && mode.radial_m == 0) {
        rad(i, s) = 1.0;
        drad(i, s) = 0.0;
      } else {
        rad(i, s) = bessel_j(order, mode.root_x * r);
        drad(i, s) = mode.root_x * bessel_j_prime(order, mode.root_x * r);
      }
    }
  }

  const double wphi = kTwoPi / n_phi;
  for (int i = 0; i < n_r; ++i) {
    const double r = radial_nodes[i].x;
    for (int j = 0; j < n_phi; ++j) {
      const int at = i * n_phi + j;
      const double theta = wphi * j;
      q.weights[at] = radial_nodes[i].w * r * wphi;
      for (int s = 0; s < ns; ++s) {
        const auto& mode = scalar_modes_[s];
        const int l = mode.degree_l;
        const double ang = mode.parity == 0 ? std::cos(l * theta) : std::sin(l * theta);
        const double dang = mode.parity == 0 ? -l * std::sin(l * theta) : l * std::cos(l * theta);
        const double nrm = apply_norm ? mode.norm : 1.0;
        q.values(at, s) = nrm * rad(i, s) * ang;
        q.deriv_r(at, s) = nrm * drad(i, s) * ang;
        q.deriv_t(at, s) = nrm * rad(i, s) / r * dang;
      }
    }
  }
  return q;
}

DiskQuadrature DiskBasis::evaluate_on(int n_r, int n_phi) const {
  return raw_evaluate(n_r, n_phi, true);
}

Eigen::VectorXd DiskBasis::constant_state(const Eigen::VectorXd& value) const {
  if (value.size() != m_) throw DomainError("DiskBasis: component count mismatch");
  Eigen::VectorXd c = Eigen::VectorXd::Zero(size());
  for (int comp = 0; comp < m_; ++comp)
    c[flat_index(0, comp)] = value[comp] / scalar_modes_[0].norm;
  return c;
}

Eigen::VectorXd DiskBasis::component_rotation_tangent(const Eigen::VectorXd& coeffs) const {
  if (m_ != 2) throw DomainError("DiskBasis: the plane rotation needs exactly two components");
  Eigen::VectorXd t = Eigen::VectorXd::Zero(size());
  const int ns = scalar_count();
  for (int s = 0; s < ns; ++s) {
    t[flat_index(s, 0)] = -coeffs[flat_index(s, 1)];
    t[flat_index(s, 1)] = coeffs[flat_index(s, 0)];
  }
  return t;
}

Eigen::VectorXd DiskBasis::spatial_rotation_tangent(const Eigen::VectorXd& coeffs) const {
  Eigen::VectorXd t = Eigen::VectorXd::Zero(size());
  const int ns = scalar_count();
  for (int s = 0; s < ns; ++s) {
    const auto& mode = scalar_modes_[s];
    if (mode.degree_l == 0 || mode.parity == 1) continue;
    const int sc = s, ss = s + 1;  // cos mode is immediately followed by its sin partner
    for (int comp = 0; comp < m_; ++comp) {
      t[flat_index(sc, comp)] = mode.degree_l * coeffs[flat_index(ss, comp)];
      t[flat_index(ss, comp)] = -mode.degree_l * coeffs[flat_index(sc, comp)];
    }
  }
  return t;
}

}  // namespace orbitbif
