#pragma once

#include <cmath>
#include <cstdlib>

namespace rvi::ovb {

// Summary of the observed (restricted) regression: the treatment
// coefficient before any additional covariate is brought in.
struct RestrictedFit {
  double estimate = 0.0;    // treatment coefficient
  double std_error = 1.0;   // classical standard error, > 0
  long df = 2;              // residual degrees of freedom, >= 2
  double null_value = 0.0;  // hypothesized coefficient under H0

  // t and f are always derived, never stored.
  double t() const { return (estimate - null_value) / std_error; }
  double f() const { return std::fabs(t()) / std::sqrt(static_cast<double>(df)); }

  // Convenience constructor for summary-statistic workflows where only the
  // t-statistic is known (unit standard error, estimate offset from the null).
  static RestrictedFit from_t(double t, long df, double null_value = 0.0) {
    return RestrictedFit{null_value + t, 1.0, df, null_value};
  }

  // Throws std::invalid_argument on non-finite fields, std_error <= 0 or df < 2.
  void validate() const;
};

// Postulated strength of the added covariate: partial R2 with the outcome
// (given treatment and covariates) and with the treatment (given covariates).
struct StrengthPair {
  double r2_y = 0.0;  // in [0, 1]
  double r2_d = 0.0;  // in [0, 1); 1 is a pole of the bias factor
};

// Inference after adding a covariate of the postulated strength. The bias
// direction is unknown, so both signed estimates are reported; t_adversarial
// is |t| under the sign most favorable to rejecting H0.
struct AdjustedInference {
  double estimate_lower = 0.0;
  double estimate_upper = 0.0;
  double std_error = 0.0;
  double t_adversarial = 0.0;  // +inf when unbounded
  bool unbounded = false;      // r2_y == 1: standard error vanishes
};

// sqrt(r2_y * r2_d / (1 - r2_d)): scales the restricted standard error
// (times sqrt(df)) into the maximum change of the point estimate.
double bias_factor(const StrengthPair& s);

// sqrt((1 - r2_y) / (1 - r2_d)): multiplicative change of the standard
// error before the one-degree-of-freedom correction.
double se_factor(const StrengthPair& s);

// Applies the omitted-variable-bias identities for one added covariate:
//   estimate_lower/upper = estimate -/+ BF * se * sqrt(df)
//   std_error            = SEF * se * sqrt(df / (df - 1))
//   t_adversarial        = (f_r sqrt(1-r2_d) + sqrt(r2_y r2_d)) * sqrt(df-1)
//                          / sqrt(1 - r2_y)
AdjustedInference adjust(const RestrictedFit& fit, const StrengthPair& s);

}  // namespace rvi::ovb
