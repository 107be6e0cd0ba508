#ifndef ORBITBIF_SPECIAL_FUNCTIONS_HPP
#define ORBITBIF_SPECIAL_FUNCTIONS_HPP

#include <vector>

#include "orbitbif/errors.hpp"

namespace orbitbif {

// Bessel order stored as 2*nu so integer and half-integer orders are exact.
// The radial problem on the unit ball in dimension N with angular degree l
// needs nu = l + (N-2)/2, which is integer for even N and half-integer for
// odd N.
class BesselOrder {
 public:
  static BesselOrder from_twice(int twice_order);
  static BesselOrder of_int(int nu);
  // nu = l + (N-2)/2, exact for every N >= 2, l >= 0.
  static BesselOrder for_ball(int dimension_N, int degree_l);

  int twice() const { return twice_; }
  bool is_integer() const { return twice_ % 2 == 0; }
  double value() const { return 0.5 * twice_; }

 private:
  explicit BesselOrder(int twice) : twice_(twice) {}
  int twice_ = 0;
};

// Supported evaluation box for bessel_j / bessel_j_prime. Absolute error is
// <= 1e-12 inside it.
inline constexpr double kBesselMaxOrder = 60.0;
inline constexpr double kBesselMaxArgument = 1000.0;

// Bessel function of the first kind J_nu(x), x >= 0, nu <= 60, x <= 1000.
double bessel_j(BesselOrder order, double x);

// J_nu'(x) via (J_{nu-1} - J_{nu+1})/2, with J_0' = -J_1 and the exact limit
// at x = 0 (throws DomainError for nu = 1/2 where the limit diverges).
double bessel_j_prime(BesselOrder order, double x);

// Associated Legendre function P_{lk}(t), unnormalized, without the
// Condon-Shortley sign; k = 0 gives the Legendre polynomial P_l.
double legendre_assoc(int l, int k, double t);

struct QuadratureNode {
  double x;
  double w;
};

// Gauss-Legendre nodes and weights on [a, b].
std::vector<QuadratureNode> gauss_legendre(int n, double a, double b);

}  // namespace orbitbif

#endif
