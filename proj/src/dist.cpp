#include "rvi/dist.hpp"

#include "rvi/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rvi::dist {

namespace {

// lgamma(a + b) - lgamma(a) without catastrophic cancellation for huge a.
// For large a the direct difference of two lgamma values loses absolute
// precision (each is ~a*ln(a)), so switch to the Stirling ratio series
// Gamma(a+b)/Gamma(a) = a^b * (1 + b(b-1)/(2a) + b(b-1)(b-2)(3b-1)/(24a^2) + ...).
double lgamma_diff(double a, double b) {
  if (a < 1e5) return std::lgamma(a + b) - std::lgamma(a);
  const double c1 = b * (b - 1.0) / (2.0 * a);
  const double c2 = b * (b - 1.0) * (b - 2.0) * (3.0 * b - 1.0) / (24.0 * a * a);
  return b * std::log(a) + std::log1p(c1 + c2);
}

double log_beta(double a, double b) {
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return std::lgamma(lo) - lgamma_diff(hi, lo);
}

// Continued fraction for the regularized incomplete beta (Lentz's method).
// Requires x < (a+1)/(a+b+2) for good convergence.
double ibeta_cf(double x, double a, double b) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  double c = 1.0;
  double d = 1.0 - (a + b) * x / (a + 1.0);
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 2000; ++m) {
    const double m2 = 2.0 * m;
    double num = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
    d = 1.0 + num * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + num / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    num = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
    d = 1.0 + num * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + num / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < eps) return h;
  }
  throw numerical_error("incomplete beta continued fraction did not converge");
}

// Regularized incomplete beta I_x(a, b). Both x and its complement are
// passed explicitly so callers can supply them without cancellation.
double ibeta(double x, double cx, double a, double b) {
  if (x <= 0.0) return 0.0;
  if (cx <= 0.0) return 1.0;
  // Each log goes through whichever of x, cx is known to full relative
  // precision: near 1 the direct argument has already lost its low digits.
  const double log_x = x > 0.5 ? std::log1p(-cx) : std::log(x);
  const double log_cx = cx > 0.5 ? std::log1p(-x) : std::log(cx);
  const double front = std::exp(a * log_x + b * log_cx - log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * ibeta_cf(x, a, b) / a;
  }
  return 1.0 - front * ibeta_cf(cx, b, a) / b;
}

// Upper-tail probability P(T > t) for t >= 0. The continued fraction
// stagnates for huge df, where the normal tail plus the O(1/df) correction
// is accurate to ~1e-12 anyway, so switch over there.
double t_tail(double t, double df) {
  if (df >= 1e7) {
    const double q = 0.5 * std::erfc(t * M_SQRT1_2);
    const double phi = std::exp(-0.5 * t * t) / std::sqrt(2.0 * M_PI);
    return q + phi * (t * t * t + t) / (4.0 * df);
  }
  const double t2 = t * t;
  const double x = df / (df + t2);    // argument of I_x(df/2, 1/2)
  const double cx = t2 / (df + t2);   // exact complement
  return 0.5 * ibeta(x, cx, 0.5 * df, 0.5);
}

double t_pdf(double t, double df) {
  const double lognorm =
      lgamma_diff(0.5 * df, 0.5) - 0.5 * std::log(df * M_PI);
  return std::exp(lognorm - 0.5 * (df + 1.0) * std::log1p(t * t / df));
}

// Acklam's rational approximation for the inverse normal CDF, then one
// Halley refinement against erfc to reach ~1e-15.
double normal_quantile_impl(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double plow = 0.02425;

  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  // Halley step: e = Phi(x) - p, u = e / phi(x).
  const double e = 0.5 * std::erfc(-x / M_SQRT2) - p;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("normal_quantile: p must be in (0, 1), got " +
                                std::to_string(p));
  }
  return normal_quantile_impl(p);
}

double t_cdf(double x, long df) {
  if (df < 1) {
    throw std::invalid_argument("t_cdf: df must be >= 1, got " +
                                std::to_string(df));
  }
  const double nu = static_cast<double>(df);
  if (x >= 0.0) return 1.0 - t_tail(x, nu);
  return t_tail(-x, nu);
}

double t_critical(double alpha, long df) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("t_critical: alpha must be in (0, 1), got " +
                                std::to_string(alpha));
  }
  if (df < 1) {
    throw std::invalid_argument("t_critical: df must be >= 1, got " +
                                std::to_string(df));
  }
  const double nu = static_cast<double>(df);
  const double q = 0.5 * alpha;  // target upper-tail probability, in (0, 0.5)

  // Bracket the root: t_tail is strictly decreasing in t with t_tail(0)=0.5.
  double lo = 0.0;
  double hi = std::max(normal_quantile_impl(1.0 - q), 1.0);
  while (t_tail(hi, nu) > q) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) {
      throw numerical_error("t_critical: failed to bracket the quantile");
    }
  }

  // Safeguarded Newton on t_tail(t) - q = 0.
  double t = std::min(std::max(normal_quantile_impl(1.0 - q), lo), hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double f = t_tail(t, nu) - q;
    if (f > 0.0) {
      lo = t;
    } else if (f < 0.0) {
      hi = t;
    } else {
      return t;
    }
    const double deriv = t_pdf(t, nu);
    double next = (deriv > 0.0) ? t + f / deriv : t;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - t) <= 1e-14 * (1.0 + std::fabs(next))) return next;
    t = next;
  }
  return t;
}

double chi2_critical_1df(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument(
        "chi2_critical_1df: p must be in (0, 1), got " + std::to_string(p));
  }
  const double z = normal_quantile_impl(0.5 * (1.0 + p));
  return z * z;
}

}  // namespace rvi::dist
