#include "ols_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace rvi::testing {

namespace {

// Gauss-Jordan inverse with partial pivoting.
std::vector<std::vector<long double>> invert(
    std::vector<std::vector<long double>> a) {
  const std::size_t k = a.size();
  std::vector<std::vector<long double>> inv(
      k, std::vector<long double>(k, 0.0L));
  for (std::size_t i = 0; i < k; ++i) inv[i][i] = 1.0L;

  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < k; ++r) {
      if (std::fabs((double)a[r][col]) > std::fabs((double)a[pivot][col])) {
        pivot = r;
      }
    }
    if (a[pivot][col] == 0.0L) {
      throw std::runtime_error("oracle: singular normal equations");
    }
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const long double d = a[col][col];
    for (std::size_t j = 0; j < k; ++j) {
      a[col][j] /= d;
      inv[col][j] /= d;
    }
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      const long double factor = a[r][col];
      if (factor == 0.0L) continue;
      for (std::size_t j = 0; j < k; ++j) {
        a[r][j] -= factor * a[col][j];
        inv[r][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace

OracleFit normal_equations_fit(const Eigen::MatrixXd& X,
                               const Eigen::VectorXd& y) {
  const std::size_t n = static_cast<std::size_t>(X.rows());
  const std::size_t k = static_cast<std::size_t>(X.cols());
  if (n <= k) throw std::runtime_error("oracle: n <= k");

  std::vector<std::vector<long double>> xtx(k,
                                            std::vector<long double>(k, 0.0L));
  std::vector<long double> xty(k, 0.0L);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < k; ++a) {
      const long double xa = X(static_cast<Eigen::Index>(i),
                               static_cast<Eigen::Index>(a));
      xty[a] += xa * (long double)y(static_cast<Eigen::Index>(i));
      for (std::size_t b = a; b < k; ++b) {
        xtx[a][b] += xa * (long double)X(static_cast<Eigen::Index>(i),
                                         static_cast<Eigen::Index>(b));
      }
    }
  }
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < a; ++b) xtx[a][b] = xtx[b][a];
  }

  const auto inv = invert(xtx);
  std::vector<long double> beta(k, 0.0L);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) beta[a] += inv[a][b] * xty[b];
  }

  long double rss = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    long double r = y(static_cast<Eigen::Index>(i));
    for (std::size_t a = 0; a < k; ++a) {
      r -= beta[a] * (long double)X(static_cast<Eigen::Index>(i),
                                    static_cast<Eigen::Index>(a));
    }
    rss += r * r;
  }

  OracleFit fit;
  fit.df = static_cast<long>(n - k);
  fit.rss = static_cast<double>(rss);
  const long double sigma2 = rss / fit.df;
  fit.beta.resize(k);
  fit.std_errors.resize(k);
  for (std::size_t a = 0; a < k; ++a) {
    fit.beta[a] = static_cast<double>(beta[a]);
    fit.std_errors[a] =
        static_cast<double>(std::sqrt((double)(sigma2 * inv[a][a])));
  }
  return fit;
}

}  // namespace rvi::testing
