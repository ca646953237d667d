#include "rvi/ovb.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace rvi::ovb {

namespace {

void check_strengths(const StrengthPair& s, bool allow_full_r2_y) {
  if (!(s.r2_y >= 0.0) || !(s.r2_y <= 1.0)) {
    throw std::invalid_argument("r2_y must be in [0, 1], got " +
                                std::to_string(s.r2_y));
  }
  if (!allow_full_r2_y && s.r2_y == 1.0) {
    throw std::invalid_argument("r2_y must be < 1");
  }
  if (!(s.r2_d >= 0.0) || !(s.r2_d < 1.0)) {
    throw std::invalid_argument("r2_d must be in [0, 1), got " +
                                std::to_string(s.r2_d));
  }
}

}  // namespace

void RestrictedFit::validate() const {
  if (!std::isfinite(estimate) || !std::isfinite(std_error) ||
      !std::isfinite(null_value)) {
    throw std::invalid_argument("restricted fit has non-finite fields");
  }
  if (!(std_error > 0.0)) {
    throw std::invalid_argument("std_error must be > 0, got " +
                                std::to_string(std_error));
  }
  if (df < 2) {
    throw std::invalid_argument("df must be >= 2, got " + std::to_string(df));
  }
}

double bias_factor(const StrengthPair& s) {
  check_strengths(s, /*allow_full_r2_y=*/true);
  return std::sqrt(s.r2_y * s.r2_d / (1.0 - s.r2_d));
}

double se_factor(const StrengthPair& s) {
  check_strengths(s, /*allow_full_r2_y=*/true);
  return std::sqrt((1.0 - s.r2_y) / (1.0 - s.r2_d));
}

AdjustedInference adjust(const RestrictedFit& fit, const StrengthPair& s) {
  fit.validate();
  check_strengths(s, /*allow_full_r2_y=*/true);

  const double df = static_cast<double>(fit.df);
  const double shift = bias_factor(s) * fit.std_error * std::sqrt(df);
  AdjustedInference out;
  out.estimate_lower = fit.estimate - shift;
  out.estimate_upper = fit.estimate + shift;
  out.std_error = se_factor(s) * fit.std_error * std::sqrt(df / (df - 1.0));

  if (s.r2_y == 1.0) {
    out.unbounded = true;
    out.t_adversarial = std::numeric_limits<double>::infinity();
    return out;
  }

  out.t_adversarial = (fit.f() * std::sqrt(1.0 - s.r2_d) +
                       std::sqrt(s.r2_y * s.r2_d)) *
                      std::sqrt(df - 1.0) / std::sqrt(1.0 - s.r2_y);
  return out;
}

}  // namespace rvi::ovb
