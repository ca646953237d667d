#include "quantile_oracle.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace rvi::testing {

namespace {

double simpson(double a, double b, double fa, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fb, double fm,
                        double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, m, fa, fm, flm);
  const double right = simpson(m, b, fm, fb, frm);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, fm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, fb, frm, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  if (b <= a) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  return adaptive_simpson(f, a, b, fa, fb, fm, simpson(a, b, fa, fb, fm), tol,
                          40);
}

// log(cos(theta)), series near zero where (nu-1)*log(cos) would lose digits.
double log_cos(double theta) {
  if (theta > 1e-4) return std::log(std::cos(theta));
  const double t2 = theta * theta;
  return -t2 * (0.5 + t2 * (1.0 / 12.0 + t2 / 45.0));
}

// Integral of cos(theta)^(nu-1) over [0, upper]. For large nu the mass sits
// inside theta ~ 1/sqrt(nu), so the range is covered by geometrically
// growing segments starting at that scale.
double cos_power_integral(double upper, double nu) {
  const auto f = [nu](double theta) {
    return std::exp((nu - 1.0) * log_cos(theta));
  };
  double total = 0.0;
  double a = 0.0;
  double width = 0.5 / std::sqrt(nu);
  while (a < upper) {
    const double b = std::min(upper, a + width);
    total += integrate(f, a, b, 1e-15);
    a = b;
    width *= 2.0;
  }
  return total;
}

}  // namespace

double oracle_t_cdf(double x, double df) {
  const double nu = df;
  const double half = cos_power_integral(M_PI_2, nu);
  const double part = cos_power_integral(std::atan(std::fabs(x) / std::sqrt(nu)), nu);
  const double tail_to_center = 0.5 * part / half;
  return x >= 0.0 ? 0.5 + tail_to_center : 0.5 - tail_to_center;
}

double oracle_t_quantile(double p, double df) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p out of range");
  if (p == 0.5) return 0.0;
  const bool flip = p < 0.5;
  const double target = flip ? 1.0 - p : p;
  double lo = 0.0;
  double hi = 1.0;
  while (oracle_t_cdf(hi, df) < target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw std::runtime_error("oracle bracket failed");
  }
  for (int i = 0; i < 200 && (hi - lo) > 1e-14 * (1.0 + hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (oracle_t_cdf(mid, df) < target ? lo : hi) = mid;
  }
  const double q = 0.5 * (lo + hi);
  return flip ? -q : q;
}

double oracle_normal_cdf(double x) {
  const auto f = [](double u) { return std::exp(-0.5 * u * u); };
  const double root_two_pi = std::sqrt(2.0 * M_PI);
  const double part = integrate(f, 0.0, std::fabs(x), 1e-16) / root_two_pi;
  return x >= 0.0 ? 0.5 + part : 0.5 - part;
}

double oracle_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p out of range");
  if (p == 0.5) return 0.0;
  const bool flip = p < 0.5;
  const double target = flip ? 1.0 - p : p;
  double lo = 0.0;
  double hi = 1.0;
  while (oracle_normal_cdf(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 60.0) break;  // CDF is 1 to working precision out here
  }
  for (int i = 0; i < 200 && (hi - lo) > 1e-15 * (1.0 + hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (oracle_normal_cdf(mid) < target ? lo : hi) = mid;
  }
  const double q = 0.5 * (lo + hi);
  return flip ? -q : q;
}

}  // namespace rvi::testing
