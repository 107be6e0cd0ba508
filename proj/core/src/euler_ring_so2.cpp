#include "orbitbif/euler_ring_so2.hpp"

#include <cmath>

namespace orbitbif {

EulerElement EulerElement::generator(int k) {
  if (k < 1) throw DomainError("EulerElement: generator index must be >= 1");
  return EulerElement(0, {{k, 1}});
}

void EulerElement::prune() {
  for (auto it = orbit_.begin(); it != orbit_.end();) {
    if (it->second == 0)
      it = orbit_.erase(it);
    else
      ++it;
  }
}

EulerElement ring_add(const EulerElement& a, const EulerElement& b) {
  std::map<int, int> orbit = a.orbit_;
  for (const auto& [k, c] : b.orbit_) orbit[k] += c;
  return EulerElement(a.unit_ + b.unit_, std::move(orbit));
}

EulerElement ring_mul(const EulerElement& a, const EulerElement& b) {
  std::map<int, int> orbit;
  for (const auto& [k, c] : a.orbit_) orbit[k] += b.unit_ * c;
  for (const auto& [k, c] : b.orbit_) orbit[k] += a.unit_ * c;
  return EulerElement(a.unit_ * b.unit_, std::move(orbit));
}

EulerElement EulerElement::scaled(int c) const {
  std::map<int, int> orbit = orbit_;
  for (auto& [k, v] : orbit) v *= c;
  return EulerElement(unit_ * c, std::move(orbit));
}

std::string EulerElement::to_string() const {
  std::string s = std::to_string(unit_) + "*I";
  for (const auto& [k, c] : orbit_) {
    s += (c >= 0 ? " + " : " - ") + std::to_string(std::abs(c)) + "*u" + std::to_string(k);
  }
  return s;
}

int So2RepDecomposition::dimension() const {
  int d = trivial_dim;
  for (const auto& [k, count] : rotation_counts) d += 2 * count;
  return d;
}

EulerElement chi_sphere(const So2RepDecomposition& rep) {
  EulerElement chi = EulerElement::unit();
  for (const auto& [k, count] : rep.rotation_counts) {
    const EulerElement factor =
        ring_add(EulerElement::unit(), EulerElement::generator(k).scaled(-1));
    for (int i = 0; i < count; ++i) chi = ring_mul(chi, factor);
  }
  if (rep.trivial_dim % 2 == 1) chi = chi.scaled(-1);
  return chi;
}

So2RepDecomposition rep_of_negative_space(const MatrixSpectrum& spec, const SpectrumTable& eigs,
                                          double lambda) {
  if (eigs.dimension_N != 2)
    throw DomainError("rep_of_negative_space: only the disk (N = 2) is supported");
  So2RepDecomposition rep;
  for (const auto& d : group_by_beta(eigs)) {
    for (const auto& me : spec.eigenvalues) {
      const double value = (d.beta - lambda * me.alpha) / (1.0 + d.beta);
      if (value < -1e-9) {
        for (const auto& [l, dim] : d.blocks) {
          if (l == 0) {
            rep.trivial_dim += me.multiplicity;
          } else {
            rep.rotation_counts[l] += me.multiplicity;
          }
        }
      }
    }
  }
  // The enumeration must be long enough that no pair beyond it is negative.
  const double needed = std::max({0.0, lambda * spec.max_alpha(), lambda * spec.min_alpha()});
  if (eigs.beta_max < needed * (1.0 - 1e-12))
    throw InsufficientCutoffError("rep_of_negative_space: beta_max=" +
                                  std::to_string(eigs.beta_max) + " < lambda*alpha=" +
                                  std::to_string(needed));
  return rep;
}

bool index_change_witness(const MatrixSpectrum& spec, const SpectrumTable& eigs, double lambda0,
                          double epsilon) {
  if (epsilon <= 0.0) throw DomainError("index_change_witness: epsilon must be positive");
  const auto below = rep_of_negative_space(spec, eigs, lambda0 - epsilon);
  const auto above = rep_of_negative_space(spec, eigs, lambda0 + epsilon);
  return chi_sphere(below) != chi_sphere(above);
}

}  // namespace orbitbif
