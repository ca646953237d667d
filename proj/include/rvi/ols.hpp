#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rvi/ovb.hpp"

namespace rvi::ols {

// Immutable column-oriented numeric table. Rows with missing values are
// dropped at ingestion; the count survives here for reporting.
class Dataset {
 public:
  Dataset(std::vector<std::string> names, std::vector<Eigen::VectorXd> columns,
          std::size_t dropped_rows = 0);

  static Dataset from_rows(std::vector<std::string> names,
                           const std::vector<std::vector<double>>& rows,
                           std::size_t dropped_rows = 0);

  Eigen::Index n_rows() const { return n_rows_; }
  std::size_t n_cols() const { return columns_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  bool has(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;  // data_error if absent
  const Eigen::VectorXd& column(std::string_view name) const;
  std::size_t dropped_rows() const { return dropped_rows_; }

 private:
  std::vector<std::string> names_;
  std::vector<Eigen::VectorXd> columns_;
  Eigen::Index n_rows_ = 0;
  std::size_t dropped_rows_ = 0;
};

// Which regression to run: outcome on treatment plus covariates.
struct ModelSpec {
  std::string outcome;
  std::string treatment;
  std::vector<std::string> covariates;
  bool include_intercept = true;
};

struct FitResult {
  std::map<std::string, double> coefficients;
  std::map<std::string, double> std_errors;
  std::map<std::string, double> t_stats;  // against zero
  long df = 0;                            // n - number of regressors
  Eigen::VectorXd residuals;
  double r_squared = 0.0;

  double coefficient(const std::string& name) const;
  double std_error(const std::string& name) const;
};

// Name used for the intercept column in fit results.
inline constexpr const char* kInterceptName = "(Intercept)";

// OLS with classical (homoskedastic) standard errors. The solver is
// QR-based; rank deficiency raises singular_design_error naming the
// collinear columns (residual norm < 1e-10 of the column norm).
FitResult fit(const Dataset& data, const ModelSpec& spec);

// Treatment-coefficient summary of the restricted model, packaged for the
// sensitivity formulas.
ovb::RestrictedFit restricted_fit(const Dataset& data, const ModelSpec& spec,
                                  double null_value);

// Residuals of target after regressing it on `on` plus an intercept.
// Requires a full-rank design.
Eigen::VectorXd residualize(const Dataset& data, std::string_view target,
                            std::span<const std::string> on);

// Residuals of target after projecting it onto the span of `on` plus an
// intercept. Tolerates collinear columns: the projection depends only on
// the span, so redundant columns are harmless here.
Eigen::VectorXd span_residuals(const Dataset& data, std::string_view target,
                               std::span<const std::string> on);

// Observed partial R2 pair of column z: with the outcome given treatment
// and covariates, and with the treatment given covariates. Computed from
// residual correlations and cross-checked against the long-regression
// t-statistic identity t^2 / (t^2 + df). null_value is accepted for
// interface symmetry; the strengths do not depend on it.
ovb::StrengthPair observed_strength(const Dataset& data, const ModelSpec& spec,
                                    std::string_view z, double null_value);

}  // namespace rvi::ols
