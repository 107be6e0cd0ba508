// Extended-precision Bessel oracle, independent of the library implementation.
// Everything here is evaluated with the ascending power series only; the
// boundary-condition roots are located by a sign-change scan plus bisection.
//
// The alternating series loses roughly 0.44*x decimal digits to cancellation,
// so pick the Real type to the argument range: real50 is good to x ~ 60,
// real200 to x ~ 400.
#ifndef ORBITBIF_TESTS_HP_BESSEL_HPP
#define ORBITBIF_TESTS_HP_BESSEL_HPP

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <stdexcept>
#include <vector>

namespace hp {

using real50 = boost::multiprecision::cpp_bin_float_50;
using real200 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200>>;

template <typename Real>
Real pi() {
  return 4 * atan(Real(1));
}

// Gamma(nu + 1) for nu = twice/2 by downward recursion.
template <typename Real>
Real gamma_nu_plus_one(int twice) {
  Real g;
  Real arg;
  if (twice % 2 == 0) {
    g = 1;
    arg = twice / 2 + 1;
    while (arg > Real(1.5)) {
      arg -= 1;
      g *= arg;
    }
  } else {
    g = sqrt(pi<Real>()) / 2;  // Gamma(3/2)
    arg = Real(twice) / 2 + 1;
    while (arg > Real(1.6)) {
      arg -= 1;
      g *= arg;
    }
  }
  return g;
}

// J_nu(x) with 2*nu = twice, by the power series.
template <typename Real>
Real bessel_j(int twice, const Real& x) {
  if (x == 0) return twice == 0 ? Real(1) : Real(0);
  const Real half = x / 2;
  Real lead = pow(half, Real(twice) / 2);
  lead /= gamma_nu_plus_one<Real>(twice);
  const Real z = -half * half;
  Real term = 1;
  Real sum = 1;
  const Real nu = Real(twice) / 2;
  const Real cut = pow(Real(10), -(std::numeric_limits<Real>::digits10 + 15));
  for (int k = 1; k < 5000; ++k) {
    term *= z / k / (nu + k);
    sum += term;
    if (abs(term) < cut * (1 + abs(sum))) break;
  }
  return lead * sum;
}

// Radial Neumann condition for the ball, reduced with
// J_nu'(x) = (nu/x) J_nu(x) - J_{nu+1}(x) and nu = l + (N-2)/2:
//   J_nu'(x) - (N-2)/(2x) J_nu(x) = (l/x) J_nu(x) - J_{nu+1}(x).
template <typename Real>
Real radial_condition(int N, int l, const Real& x) {
  const int twice = 2 * l + N - 2;
  if (l == 0) return -bessel_j<Real>(twice + 2, x);
  return Real(l) / x * bessel_j<Real>(twice, x) - bessel_j<Real>(twice + 2, x);
}

// First m_max positive roots of the radial condition, scan step 0.25.
template <typename Real = real50>
std::vector<double> radial_roots(int N, int l, int m_max) {
  std::vector<double> roots;
  Real a = Real(1) / 4;
  Real fa = radial_condition<Real>(N, l, a);
  const Real step = Real(1) / 4;
  while (static_cast<int>(roots.size()) < m_max) {
    const Real b = a + step;
    if (b > 120) throw std::runtime_error("hp::radial_roots: scan exhausted");
    const Real fb = radial_condition<Real>(N, l, b);
    if ((fa < 0) != (fb < 0)) {
      Real lo = a, hi = b;
      Real flo = fa;
      for (int it = 0; it < 90; ++it) {
        const Real mid = (lo + hi) / 2;
        const Real fm = radial_condition<Real>(N, l, mid);
        if ((flo < 0) == (fm < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(static_cast<double>((lo + hi) / 2));
    }
    a = b;
    fa = fb;
  }
  return roots;
}

// Bisection on the oracle's own J evaluation, for locating plain Bessel zeros.
inline double bessel_zero_between(int twice, double lo_in, double hi_in) {
  real50 lo = lo_in, hi = hi_in;
  real50 flo = bessel_j<real50>(twice, lo);
  for (int it = 0; it < 90; ++it) {
    const real50 mid = (lo + hi) / 2;
    const real50 fm = bessel_j<real50>(twice, mid);
    if ((flo < 0) == (fm < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return static_cast<double>((lo + hi) / 2);
}

}  // namespace hp

#endif
