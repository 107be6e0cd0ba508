#include "orbitbif/special_functions.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace orbitbif {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// ---------------------------------------------------------------------------
// Double-double arithmetic for the ascending power series. The alternating
// series loses up to ~14 decimal digits to cancellation on the region where
// it is used; 32 digits of working precision keep the final absolute error
// far below the 1e-12 contract.
// ---------------------------------------------------------------------------
struct DD {
  double hi = 0.0;
  double lo = 0.0;
};

inline DD two_sum(double a, double b) {
  const double s = a + b;
  const double v = s - a;
  const double e = (a - (s - v)) + (b - v);
  return {s, e};
}

inline DD two_prod(double a, double b) {
  const double p = a * b;
  const double e = std::fma(a, b, -p);
  return {p, e};
}

inline DD dd_add(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  double e = s.lo + a.lo + b.lo;
  DD r = two_sum(s.hi, e);
  return r;
}

inline DD dd_mul(DD a, DD b) {
  DD p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  DD r = two_sum(p.hi, p.lo);
  return r;
}

inline DD dd_mul(DD a, double b) { return dd_mul(a, DD{b, 0.0}); }

inline DD dd_div(DD a, double b) {
  const double q1 = a.hi / b;
  DD p = two_prod(q1, b);
  const double r = ((a.hi - p.hi) - p.lo) + a.lo;
  const double q2 = r / b;
  return two_sum(q1, q2);
}

// Gamma(nu + 1) for nu = twice/2 >= 0; exact recursion down to Gamma(1) = 1
// or Gamma(3/2) = sqrt(pi)/2 in double-double.
DD dd_gamma_nu_plus_one(int twice) {
  DD g;
  double arg;  // current argument of Gamma, stepping down by 1
  if (twice % 2 == 0) {
    g = DD{1.0, 0.0};
    arg = twice / 2 + 1.0;
    while (arg > 1.5) {
      arg -= 1.0;
      g = dd_mul(g, arg);
    }
  } else {
    // sqrt(pi)/2 to double-double accuracy.
    g = DD{0.886226925452758014, -7.773333329536523e-18};
    arg = 0.5 * twice + 1.0;
    while (arg > 1.6) {
      arg -= 1.0;
      g = dd_mul(g, arg);
    }
  }
  return g;
}

// Ascending series J_nu(x) = (x/2)^nu / Gamma(nu+1) * sum_k (-x^2/4)^k /
// (k! (nu+1)_k), evaluated in double-double. Used for x <= max(12, nu) where
// cancellation stays within the extra precision.
double bessel_series(int twice, double x) {
  const double nu = 0.5 * twice;
  const DD half_x{0.5 * x, 0.0};
  // (x/2)^nu: integer part by squaring, half power via sqrt.
  DD lead{1.0, 0.0};
  {
    int n = twice / 2;
    DD base = half_x;
    while (n > 0) {
      if (n & 1) lead = dd_mul(lead, base);
      base = dd_mul(base, base);
      n >>= 1;
    }
    if (twice % 2 == 1) lead = dd_mul(lead, DD{std::sqrt(0.5 * x), 0.0});
  }
  lead = dd_div(dd_mul(lead, 1.0), 1.0);
  DD gamma = dd_gamma_nu_plus_one(twice);
  // lead / Gamma(nu+1): divide by hi then correct; gamma.lo is tiny relative.
  DD scale = dd_div(lead, gamma.hi);
  scale = dd_add(scale, dd_mul(scale, -gamma.lo / gamma.hi));

  const DD z = dd_mul(dd_mul(half_x, half_x), -1.0);  // -x^2/4
  DD term{1.0, 0.0};
  DD sum{1.0, 0.0};
  for (int k = 1; k <= 400; ++k) {
    term = dd_mul(term, z);
    term = dd_div(term, static_cast<double>(k));
    term = dd_div(term, nu + k);
    sum = dd_add(sum, term);
    if (std::abs(term.hi) < 1e-35 * (1.0 + std::abs(sum.hi))) break;
  }
  DD res = dd_mul(scale, sum);
  return res.hi + res.lo;
}

// Downward (Miller) recurrence for integer orders, normalized with
// 1 = J_0 + 2 sum_k J_{2k}. Stable for every x > 0; used when x exceeds the
// series region.
double bessel_miller_int(int nu, double x) {
  const int start =
      static_cast<int>(x + 16.0 * std::cbrt(x) + 14.0 + nu % 2);  // past the turning point
  double jp = 0.0;   // trial J_{k+1}
  double jc = 1e-300;  // trial J_k (arbitrary scale)
  double norm = 0.0;
  double result = 0.0;
  for (int k = start; k >= 1; --k) {
    const double jm = (2.0 * k / x) * jc - jp;
    jp = jc;
    jc = jm;
    if (k - 1 == nu) result = jc;
    if ((k - 1) % 2 == 0) norm += (k - 1 == 0) ? jc : 2.0 * jc;
    if (std::abs(jc) > 1e250) {  // rescale to avoid overflow
      jc *= 1e-250;
      jp *= 1e-250;
      norm *= 1e-250;
      result *= 1e-250;
    }
  }
  return result / norm;
}

// Closed forms for the half-integer seeds.
inline double j_half(double x) { return std::sqrt(2.0 / (kPi * x)) * std::sin(x); }
inline double j_three_halves(double x) {
  return std::sqrt(2.0 / (kPi * x)) * (std::sin(x) / x - std::cos(x));
}
inline double j_minus_half(double x) { return std::sqrt(2.0 / (kPi * x)) * std::cos(x); }

// Upward recurrence from the exact half-integer seeds; stable because it is
// only used while the order stays below x.
double bessel_upward_half(int twice, double x) {
  double jm = j_half(x);
  if (twice == 1) return jm;
  double jc = j_three_halves(x);
  double order = 1.5;  // order of jc
  while (2.0 * order < twice) {
    const double jn = (2.0 * order / x) * jc - jm;
    jm = jc;
    jc = jn;
    order += 1.0;
  }
  return jc;
}

double bessel_eval(int twice, double x) {
  if (x == 0.0) return twice == 0 ? 1.0 : 0.0;
  const double nu = 0.5 * twice;
  if (x <= std::max(12.0, nu)) return bessel_series(twice, x);
  if (twice % 2 == 0) return bessel_miller_int(twice / 2, x);
  return bessel_upward_half(twice, x);
}

void check_bessel_domain(int twice, double x) {
  if (x < 0.0) throw DomainError("bessel_j: negative argument x = " + std::to_string(x));
  if (x > kBesselMaxArgument)
    throw DomainError("bessel_j: argument " + std::to_string(x) + " exceeds supported 1000");
  if (0.5 * twice > kBesselMaxOrder)
    throw DomainError("bessel_j: order " + std::to_string(0.5 * twice) + " exceeds supported 60");
}

}  // namespace

BesselOrder BesselOrder::from_twice(int twice_order) {
  if (twice_order < 0) throw DomainError("BesselOrder: negative order");
  return BesselOrder(twice_order);
}

BesselOrder BesselOrder::of_int(int nu) { return from_twice(2 * nu); }

BesselOrder BesselOrder::for_ball(int dimension_N, int degree_l) {
  if (dimension_N < 2) throw DomainError("BesselOrder: ball dimension must be >= 2");
  if (degree_l < 0) throw DomainError("BesselOrder: negative degree");
  return from_twice(2 * degree_l + dimension_N - 2);
}

double bessel_j(BesselOrder order, double x) {
  check_bessel_domain(order.twice(), x);
  return bessel_eval(order.twice(), x);
}

double bessel_j_prime(BesselOrder order, double x) {
  check_bessel_domain(order.twice(), x);
  const int twice = order.twice();
  if (x == 0.0) {
    if (twice == 0) return 0.0;   // J_0' = -J_1, J_1(0) = 0
    if (twice == 2) return 0.5;   // leading series coefficient of J_1
    if (twice == 1)
      throw DomainError("bessel_j_prime: J_{1/2}' diverges at x = 0");
    return 0.0;  // orders > 1: J_nu ~ x^nu, derivative vanishes
  }
  if (twice == 0) return -bessel_eval(2, x);
  // (J_{nu-1} - J_{nu+1}) / 2; for nu = 1/2 the lower order has the closed form.
  const double lower = (twice == 1) ? j_minus_half(x) : bessel_eval(twice - 2, x);
  return 0.5 * (lower - bessel_eval(twice + 2, x));
}

double legendre_assoc(int l, int k, double t) {
  if (l < 0) throw DomainError("legendre_assoc: negative degree");
  if (k < 0 || k > l) throw DomainError("legendre_assoc: order k must satisfy 0 <= k <= l");
  if (std::abs(t) > 1.0) throw DomainError("legendre_assoc: argument outside [-1, 1]");
  // P_{kk} = (2k-1)!! (1-t^2)^{k/2}, then two-term upward recurrence in the
  // degree. No Condon-Shortley sign.
  double pkk = 1.0;
  const double s = std::sqrt((1.0 - t) * (1.0 + t));
  for (int i = 1; i <= k; ++i) pkk *= (2.0 * i - 1.0) * s;
  if (l == k) return pkk;
  double pm = pkk;                          // P_{k,k}
  double pc = (2.0 * k + 1.0) * t * pkk;    // P_{k+1,k}
  for (int deg = k + 2; deg <= l; ++deg) {
    const double pn =
        ((2.0 * deg - 1.0) * t * pc - (deg - 1.0 + k) * pm) / (deg - k);
    pm = pc;
    pc = pn;
  }
  return pc;
}

std::vector<QuadratureNode> gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");
  std::vector<QuadratureNode> nodes(n);
  const int mid = (n + 1) / 2;
  for (int i = 0; i < mid; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    const double half = 0.5 * (b - a);
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    nodes[i] = {a + half * (1.0 - z), half * w};
    nodes[n - 1 - i] = {a + half * (1.0 + z), half * w};
  }
  return nodes;
}

}  // namespace orbitbif
