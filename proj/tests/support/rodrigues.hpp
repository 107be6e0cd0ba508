// Rodrigues-formula oracle for the associated Legendre functions:
//   P_l(t)  = 1/(2^l l!) d^l/dt^l (t^2-1)^l,
//   P_lk(t) = (1-t^2)^{k/2} d^k/dt^k P_l(t)   (no Condon-Shortley sign).
// The polynomial is expanded with exact binomial coefficients; adequate as an
// independent check for l <= 12.
#ifndef ORBITBIF_TESTS_RODRIGUES_HPP
#define ORBITBIF_TESTS_RODRIGUES_HPP

#include <cmath>
#include <vector>

namespace rodrigues {

inline std::vector<double> legendre_poly_coeffs(int l) {
  // (t^2 - 1)^l = sum_j C(l, j) (-1)^{l-j} t^{2j}
  std::vector<double> c(2 * l + 1, 0.0);
  double binom = 1.0;
  for (int j = 0; j <= l; ++j) {
    c[2 * j] = ((l - j) % 2 == 0 ? 1.0 : -1.0) * binom;
    binom = binom * (l - j) / (j + 1.0);
  }
  // differentiate l times
  for (int d = 0; d < l; ++d) {
    for (std::size_t p = 1; p < c.size(); ++p) c[p - 1] = p * c[p];
    c.pop_back();
  }
  double scale = 1.0;
  for (int i = 1; i <= l; ++i) scale *= 2.0 * i;
  for (auto& v : c) v /= scale;
  return c;
}

inline double legendre_assoc(int l, int k, double t) {
  auto c = legendre_poly_coeffs(l);
  for (int d = 0; d < k; ++d) {
    if (c.empty()) return 0.0;
    for (std::size_t p = 1; p < c.size(); ++p) c[p - 1] = p * c[p];
    c.pop_back();
  }
  double val = 0.0;
  for (std::size_t p = c.size(); p-- > 0;) val = val * t + c[p];
  return std::pow(1.0 - t * t, 0.5 * k) * val;
}

}  // namespace rodrigues

#endif
