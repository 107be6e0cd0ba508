#ifndef ORBITBIF_EULER_RING_SO2_HPP
#define ORBITBIF_EULER_RING_SO2_HPP

#include <map>
#include <string>

#include "orbitbif/operator_spectrum.hpp"

namespace orbitbif {

// Element of the Euler ring U(SO(2)): an integer multiple of the unit I (the
// class of SO(2)/SO(2)) plus an integer combination of the generators u_k,
// k >= 1 (the classes of the one-dimensional orbits SO(2)/Z_k). Products of
// two generators vanish: (a0; a_k) * (b0; b_k) = (a0 b0; a0 b_k + b0 a_k).
class EulerElement {
 public:
  EulerElement() = default;
  static EulerElement unit() { return EulerElement(1, {}); }
  static EulerElement generator(int k);

  int unit_coeff() const { return unit_; }
  const std::map<int, int>& orbit_coeffs() const { return orbit_; }

  friend EulerElement ring_add(const EulerElement& a, const EulerElement& b);
  friend EulerElement ring_mul(const EulerElement& a, const EulerElement& b);
  EulerElement scaled(int c) const;

  bool operator==(const EulerElement& other) const = default;
  std::string to_string() const;

 private:
  EulerElement(int unit, std::map<int, int> orbit) : unit_(unit), orbit_(std::move(orbit)) {
    prune();
  }
  void prune();

  int unit_ = 0;
  std::map<int, int> orbit_;  // k -> coefficient of u_k, no explicit zeros
};

EulerElement ring_add(const EulerElement& a, const EulerElement& b);
EulerElement ring_mul(const EulerElement& a, const EulerElement& b);

inline EulerElement operator+(const EulerElement& a, const EulerElement& b) {
  return ring_add(a, b);
}
inline EulerElement operator*(const EulerElement& a, const EulerElement& b) {
  return ring_mul(a, b);
}

// Real SO(2)-representation given by its isotypic multiplicities: d0 copies
// of the trivial representation and d_k copies of the two-dimensional weight-k
// rotation representation.
struct So2RepDecomposition {
  int trivial_dim = 0;
  std::map<int, int> rotation_counts;  // k >= 1 -> d_k >= 0

  int dimension() const;
};

// Equivariant Euler characteristic of the one-point compactification of the
// representation: (-1)^{d0} * prod_k (I - u_k)^{d_k}, expanded in the ring,
// which comes out as (-1)^{d0} (I - sum_k d_k u_k).
EulerElement chi_sphere(const So2RepDecomposition& rep);

// Negative space of Id - L_{lambda A} on the disk (N = 2), intersected with
// the orbit-normal space, as an SO(2)-representation: every pair with
// beta_k < lambda*alpha_j contributes mu_A(alpha_j) copies of each isotypic
// block of the beta_k eigenspace (degree l >= 1 -> weight-l rotation block,
// degree 0 -> trivial block). Orbit-tangent directions carry alpha = 0 and
// never satisfy the strict inequality.
So2RepDecomposition rep_of_negative_space(const MatrixSpectrum& spec, const SpectrumTable& eigs,
                                          double lambda);

// True iff the Euler characteristics of the negative-space spheres at
// lambda0 - eps and lambda0 + eps differ.
bool index_change_witness(const MatrixSpectrum& spec, const SpectrumTable& eigs, double lambda0,
                          double epsilon);

}  // namespace orbitbif

#endif
