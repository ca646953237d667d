#include "rvi/ols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rvi/errors.hpp"

namespace rvi::ols {

namespace {

constexpr double kCollinearTol = 1e-10;

struct DesignMatrix {
  Eigen::MatrixXd X;
  std::vector<std::string> names;
};

DesignMatrix build_design(const Dataset& data,
                          std::span<const std::string> columns,
                          bool intercept) {
  const Eigen::Index n = data.n_rows();
  const Eigen::Index k =
      static_cast<Eigen::Index>(columns.size()) + (intercept ? 1 : 0);
  DesignMatrix d;
  d.X.resize(n, k);
  d.names.reserve(static_cast<std::size_t>(k));
  Eigen::Index j = 0;
  if (intercept) {
    d.X.col(j++).setOnes();
    d.names.push_back(kInterceptName);
  }
  for (const auto& name : columns) {
    d.X.col(j++) = data.column(name);
    d.names.push_back(name);
  }
  return d;
}

struct LeastSquares {
  Eigen::VectorXd beta;
  Eigen::VectorXd residuals;
  Eigen::MatrixXd xtx_inverse;
  double rss = 0.0;
};

// QR with column pivoting; a pivot whose remaining norm falls below
// kCollinearTol times its column norm marks that column as collinear.
LeastSquares solve_least_squares(const DesignMatrix& d,
                                 const Eigen::VectorXd& y) {
  const Eigen::Index k = d.X.cols();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(d.X);
  const auto& perm = qr.colsPermutation().indices();
  const Eigen::MatrixXd r =
      qr.matrixR().topLeftCorner(k, k).template triangularView<Eigen::Upper>();

  std::vector<std::string> collinear;
  for (Eigen::Index pos = 0; pos < k; ++pos) {
    const Eigen::Index src = perm(pos);
    const double col_norm = d.X.col(src).norm();
    if (col_norm == 0.0 || std::fabs(r(pos, pos)) < kCollinearTol * col_norm) {
      collinear.push_back(d.names[static_cast<std::size_t>(src)]);
    }
  }
  if (!collinear.empty()) {
    std::sort(collinear.begin(), collinear.end());
    throw singular_design_error(std::move(collinear));
  }

  LeastSquares ls;
  ls.beta = qr.solve(y);
  ls.residuals = y - d.X * ls.beta;
  ls.rss = ls.residuals.squaredNorm();

  // (X'X)^-1 = P R^-1 R^-T P' from the pivoted factorization.
  const Eigen::MatrixXd r_inv = r.template triangularView<Eigen::Upper>()
                                    .solve(Eigen::MatrixXd::Identity(k, k));
  const Eigen::MatrixXd inv_permuted = r_inv * r_inv.transpose();
  ls.xtx_inverse.resize(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      ls.xtx_inverse(perm(i), perm(j)) = inv_permuted(i, j);
    }
  }
  return ls;
}

void check_model_spec(const Dataset& data, const ModelSpec& spec) {
  auto require = [&](const std::string& name) {
    if (!data.has(name)) throw data_error("unknown column: " + name);
  };
  require(spec.outcome);
  require(spec.treatment);
  if (spec.outcome == spec.treatment) {
    throw data_error("outcome and treatment must differ");
  }
  for (const auto& c : spec.covariates) {
    require(c);
    if (c == spec.outcome || c == spec.treatment) {
      throw data_error("covariate duplicates outcome or treatment: " + c);
    }
  }
  for (std::size_t i = 0; i < spec.covariates.size(); ++i) {
    for (std::size_t j = i + 1; j < spec.covariates.size(); ++j) {
      if (spec.covariates[i] == spec.covariates[j]) {
        throw data_error("duplicate covariate: " + spec.covariates[i]);
      }
    }
  }
}

FitResult fit_columns(const Dataset& data, const Eigen::VectorXd& y,
                      std::span<const std::string> columns, bool intercept) {
  const DesignMatrix d = build_design(data, columns, intercept);
  const Eigen::Index n = data.n_rows();
  const Eigen::Index k = d.X.cols();
  if (n <= k) {
    throw data_error("too few rows: n = " + std::to_string(n) + ", " +
                     std::to_string(k) + " regressors");
  }

  const LeastSquares ls = solve_least_squares(d, y);
  FitResult out;
  out.df = static_cast<long>(n - k);
  out.residuals = ls.residuals;

  const double sigma2 = ls.rss / static_cast<double>(out.df);
  for (Eigen::Index j = 0; j < k; ++j) {
    const std::string& name = d.names[static_cast<std::size_t>(j)];
    const double se = std::sqrt(sigma2 * ls.xtx_inverse(j, j));
    out.coefficients[name] = ls.beta(j);
    out.std_errors[name] = se;
    out.t_stats[name] = se > 0.0 ? ls.beta(j) / se : 0.0;
  }

  double tss;
  if (intercept) {
    tss = (y.array() - y.mean()).matrix().squaredNorm();
  } else {
    tss = y.squaredNorm();
  }
  out.r_squared = tss > 0.0 ? 1.0 - ls.rss / tss : 1.0;
  return out;
}

// Residuals of y after projecting on the given columns (+ optional
// intercept); zero design (no columns, no intercept) returns y unchanged.
Eigen::VectorXd project_out(const Dataset& data, const Eigen::VectorXd& y,
                            std::span<const std::string> columns,
                            bool intercept) {
  if (columns.empty() && !intercept) return y;
  const DesignMatrix d = build_design(data, columns, intercept);
  if (data.n_rows() < d.X.cols()) {
    throw data_error("too few rows to residualize");
  }
  return solve_least_squares(d, y).residuals;
}

// Squared correlation of two residual vectors. Residuals of an
// intercept-bearing regression are mean-zero, so the uncentered form is the
// partial correlation. A vector that was residualized away (norm below the
// collinearity tolerance of its source scale) contributes zero.
double squared_residual_correlation(const Eigen::VectorXd& u,
                                    const Eigen::VectorXd& v,
                                    double u_source_norm,
                                    double v_source_norm) {
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu <= kCollinearTol * u_source_norm || nv <= kCollinearTol * v_source_norm) {
    return 0.0;
  }
  const double c = u.dot(v) / (nu * nv);
  return c * c;
}

}  // namespace

Dataset::Dataset(std::vector<std::string> names,
                 std::vector<Eigen::VectorXd> columns,
                 std::size_t dropped_rows)
    : names_(std::move(names)),
      columns_(std::move(columns)),
      dropped_rows_(dropped_rows) {
  if (names_.size() != columns_.size()) {
    throw data_error("column name/count mismatch");
  }
  if (columns_.empty()) throw data_error("dataset has no columns");
  n_rows_ = columns_.front().size();
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    if (names_[j].empty()) throw data_error("empty column name");
    if (columns_[j].size() != n_rows_) {
      throw data_error("column length mismatch: " + names_[j]);
    }
    if (!columns_[j].allFinite()) {
      throw data_error("non-finite values in column: " + names_[j]);
    }
    for (std::size_t i = 0; i < j; ++i) {
      if (names_[i] == names_[j]) {
        throw data_error("duplicate column name: " + names_[j]);
      }
    }
  }
}

Dataset Dataset::from_rows(std::vector<std::string> names,
                           const std::vector<std::vector<double>>& rows,
                           std::size_t dropped_rows) {
  std::vector<Eigen::VectorXd> cols(
      names.size(), Eigen::VectorXd(static_cast<Eigen::Index>(rows.size())));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != names.size()) {
      throw data_error("row " + std::to_string(i + 1) + " has " +
                       std::to_string(rows[i].size()) + " fields, expected " +
                       std::to_string(names.size()));
    }
    for (std::size_t j = 0; j < names.size(); ++j) {
      cols[j](static_cast<Eigen::Index>(i)) = rows[i][j];
    }
  }
  return Dataset(std::move(names), std::move(cols), dropped_rows);
}

bool Dataset::has(std::string_view name) const {
  for (const auto& n : names_) {
    if (n == name) return true;
  }
  return false;
}

std::size_t Dataset::index_of(std::string_view name) const {
  for (std::size_t j = 0; j < names_.size(); ++j) {
    if (names_[j] == name) return j;
  }
  throw data_error("unknown column: " + std::string(name));
}

const Eigen::VectorXd& Dataset::column(std::string_view name) const {
  return columns_[index_of(name)];
}

double FitResult::coefficient(const std::string& name) const {
  const auto it = coefficients.find(name);
  if (it == coefficients.end()) throw data_error("no coefficient: " + name);
  return it->second;
}

double FitResult::std_error(const std::string& name) const {
  const auto it = std_errors.find(name);
  if (it == std_errors.end()) throw data_error("no std error: " + name);
  return it->second;
}

FitResult fit(const Dataset& data, const ModelSpec& spec) {
  check_model_spec(data, spec);
  std::vector<std::string> regressors;
  regressors.reserve(spec.covariates.size() + 1);
  regressors.push_back(spec.treatment);
  regressors.insert(regressors.end(), spec.covariates.begin(),
                    spec.covariates.end());
  return fit_columns(data, data.column(spec.outcome), regressors,
                     spec.include_intercept);
}

ovb::RestrictedFit restricted_fit(const Dataset& data, const ModelSpec& spec,
                                  double null_value) {
  const FitResult res = fit(data, spec);
  if (res.df < 2) {
    throw data_error("too few rows: sensitivity analysis needs df >= 2, got " +
                     std::to_string(res.df));
  }
  ovb::RestrictedFit rf;
  rf.estimate = res.coefficient(spec.treatment);
  rf.std_error = res.std_error(spec.treatment);
  rf.df = res.df;
  rf.null_value = null_value;
  rf.validate();
  return rf;
}

Eigen::VectorXd residualize(const Dataset& data, std::string_view target,
                            std::span<const std::string> on) {
  return project_out(data, data.column(target), on, /*intercept=*/true);
}

Eigen::VectorXd span_residuals(const Dataset& data, std::string_view target,
                               std::span<const std::string> on) {
  const Eigen::VectorXd& y = data.column(target);
  const DesignMatrix d = build_design(data, on, /*intercept=*/true);
  if (data.n_rows() < d.X.cols()) {
    throw data_error("too few rows to residualize");
  }
  const Eigen::VectorXd beta = d.X.colPivHouseholderQr().solve(y);
  return y - d.X * beta;
}

ovb::StrengthPair observed_strength(const Dataset& data, const ModelSpec& spec,
                                    std::string_view z, double null_value) {
  (void)null_value;
  check_model_spec(data, spec);
  const std::string z_name(z);
  if (!data.has(z_name)) throw data_error("unknown column: " + z_name);
  if (z_name == spec.outcome || z_name == spec.treatment ||
      std::find(spec.covariates.begin(), spec.covariates.end(), z_name) !=
          spec.covariates.end()) {
    throw data_error("z must not appear in the model spec: " + z_name);
  }

  const Eigen::VectorXd& y = data.column(spec.outcome);
  const Eigen::VectorXd& d_col = data.column(spec.treatment);
  const Eigen::VectorXd& z_col = data.column(z_name);

  // Conditioning sets: {treatment, covariates} for the outcome leg,
  // {covariates} for the treatment leg.
  std::vector<std::string> dx;
  dx.reserve(spec.covariates.size() + 1);
  dx.push_back(spec.treatment);
  dx.insert(dx.end(), spec.covariates.begin(), spec.covariates.end());

  const bool icept = spec.include_intercept;
  const Eigen::VectorXd y_res = project_out(data, y, dx, icept);
  const Eigen::VectorXd z_res_dx = project_out(data, z_col, dx, icept);
  const Eigen::VectorXd d_res = project_out(data, d_col, spec.covariates, icept);
  const Eigen::VectorXd z_res_x =
      project_out(data, z_col, spec.covariates, icept);

  ovb::StrengthPair s;
  s.r2_y = squared_residual_correlation(y_res, z_res_dx, y.norm(), z_col.norm());
  s.r2_d = squared_residual_correlation(d_res, z_res_x, d_col.norm(), z_col.norm());

  // Cross-check against the long-regression identity t^2 / (t^2 + df)
  // whenever z is not collinear with the conditioning set.
  if (z_res_dx.norm() > kCollinearTol * z_col.norm()) {
    ModelSpec long_spec = spec;
    long_spec.covariates.push_back(z_name);
    const FitResult long_fit = fit(data, long_spec);
    const double t = long_fit.t_stats.at(z_name);
    const double via_t = t * t / (t * t + static_cast<double>(long_fit.df));
    if (std::fabs(via_t - s.r2_y) > 1e-10) {
      throw numerical_error(
          "observed_strength: partial R2 routes disagree for the outcome leg");
    }
  }
  if (z_res_x.norm() > kCollinearTol * z_col.norm()) {
    ModelSpec d_spec;
    d_spec.outcome = spec.treatment;
    d_spec.treatment = z_name;
    d_spec.covariates = spec.covariates;
    d_spec.include_intercept = icept;
    const FitResult d_fit = fit(data, d_spec);
    const double t = d_fit.t_stats.at(z_name);
    const double via_t = t * t / (t * t + static_cast<double>(d_fit.df));
    if (std::fabs(via_t - s.r2_d) > 1e-10) {
      throw numerical_error(
          "observed_strength: partial R2 routes disagree for the treatment leg");
    }
  }
  return s;
}

}  // namespace rvi::ols
