#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rvi/ovb.hpp"

namespace rvi::robustness {

using ovb::RestrictedFit;
using ovb::StrengthPair;

// Upper bounds on the added covariate's partial R2 pair. r2_y_max == 1
// makes the maximum adjusted t-statistic unbounded.
struct StrengthBounds {
  double r2_y_max = 1.0;
  double r2_d_max = 1.0;
};

enum class Regime {
  boundary,  // both constraints bind
  interior   // r2_d settles at r2_y_max / (f_r^2 + r2_y_max) inside the box
};

struct TMaxSolution {
  double t_max = 0.0;   // +inf when unbounded
  bool unbounded = false;
  StrengthPair optimizer;  // r2_y always at its bound; r2_d per regime
  Regime regime = Regime::boundary;
  long df_effective = 0;   // df - m
};

// Closed-form maximum of the adjusted |t| over all strength pairs within
// `bounds`, for m added covariates (the degrees-of-freedom cost is m; the
// optimizing pair does not depend on m).
TMaxSolution t_max(const RestrictedFit& fit, const StrengthBounds& bounds,
                   int m = 1);

// Minimum r2_y required to lift the adjusted |t| above t*_{alpha, df-1}
// when the covariate is orthogonal to the treatment (pure precision gain).
// nullopt: impossible, no such covariate exists (t_r == 0).
std::optional<double> xrvi0(const RestrictedFit& fit, double alpha);

// Minimum r2_y with the association to the treatment left unconstrained --
// the bare minimum explanatory power needed for a reversal.
double xrvi1(const RestrictedFit& fit, double alpha);

// General version with the treatment association capped at r2_d_max.
// nullopt: impossible (t_r == 0 and r2_d_max == 0).
std::optional<double> xrvi(const RestrictedFit& fit, double alpha,
                           double r2_d_max);

// Minimum equal bound on both partial R2 values needed for a reversal.
double rvi(const RestrictedFit& fit, double alpha);

// Approximate 95th percentile of r2_d under a randomized treatment:
// chi2_{1,0.95} / df. Requires df >= 4 so the value stays below 1.
double q95_r2d(long df);

// The three robustness values for one fit at one alpha, plus the general
// XRVI at any extra r2_d caps requested (e.g. q95_r2d).
struct RobustnessReport {
  double alpha = 0.05;
  double xrvi1 = 0.0;
  double rvi = 0.0;
  std::optional<double> xrvi0;
  std::vector<std::pair<double, std::optional<double>>> xrvi_at;
};

RobustnessReport report(const RestrictedFit& fit, double alpha,
                        std::span<const double> extra_r2_d_bounds = {});

}  // namespace rvi::robustness
