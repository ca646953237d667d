#include "synthetic.hpp"

#include <random>
#include <string>
#include <vector>

namespace rvi::testing {

namespace {

Eigen::VectorXd gaussian(std::mt19937_64& rng, Eigen::Index n, double sd = 1.0) {
  std::normal_distribution<double> dist(0.0, sd);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = dist(rng);
  return v;
}

}  // namespace

SyntheticRegression make_regression(std::uint64_t seed, int n_min, int n_max,
                                    int p_max) {
  std::mt19937_64 rng(seed);
  const Eigen::Index n = std::uniform_int_distribution<int>(n_min, n_max)(rng);
  const int p = std::uniform_int_distribution<int>(0, p_max)(rng);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  std::vector<std::string> names{"y", "d"};
  std::vector<Eigen::VectorXd> cols(2);

  std::vector<Eigen::VectorXd> x(static_cast<std::size_t>(p));
  for (int j = 0; j < p; ++j) {
    x[static_cast<std::size_t>(j)] = gaussian(rng, n);
    names.push_back("x" + std::to_string(j + 1));
  }
  names.push_back("z");

  Eigen::VectorXd d = gaussian(rng, n);
  for (int j = 0; j < p; ++j) d += 0.4 * unit(rng) * x[static_cast<std::size_t>(j)];

  Eigen::VectorXd z = gaussian(rng, n, 0.8);
  z += unit(rng) * d;
  for (int j = 0; j < p; ++j) z += 0.3 * unit(rng) * x[static_cast<std::size_t>(j)];

  const double lambda = (unit(rng) < 0.0 ? -1.0 : 1.0) *
                        std::uniform_real_distribution<double>(0.5, 2.0)(rng);
  const double gamma = 2.0 * unit(rng);
  Eigen::VectorXd y = lambda * d + gamma * z + gaussian(rng, n, 0.6);
  for (int j = 0; j < p; ++j) y += unit(rng) * x[static_cast<std::size_t>(j)];

  cols[0] = y;
  cols[1] = d;
  for (int j = 0; j < p; ++j) cols.push_back(x[static_cast<std::size_t>(j)]);
  cols.push_back(z);

  SyntheticRegression out{
      ols::Dataset(names, std::move(cols)),
      ols::ModelSpec{"y", "d", {}, true},
      p};
  for (int j = 0; j < p; ++j) {
    out.spec.covariates.push_back("x" + std::to_string(j + 1));
  }
  return out;
}

SyntheticSearch make_search_problem(std::uint64_t seed, int p_max) {
  std::mt19937_64 rng(seed);
  const Eigen::Index n = std::uniform_int_distribution<int>(60, 200)(rng);
  const int n_base = std::uniform_int_distribution<int>(0, 2)(rng);
  const int p = std::uniform_int_distribution<int>(1, p_max)(rng);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  std::vector<std::string> names{"y", "d"};
  std::vector<Eigen::VectorXd> cols;

  Eigen::VectorXd d = gaussian(rng, n);

  std::vector<Eigen::VectorXd> base(static_cast<std::size_t>(n_base));
  std::vector<std::string> base_names;
  for (int j = 0; j < n_base; ++j) {
    base[static_cast<std::size_t>(j)] = gaussian(rng, n) + 0.3 * unit(rng) * d;
    base_names.push_back("b" + std::to_string(j + 1));
    names.push_back(base_names.back());
  }

  std::vector<Eigen::VectorXd> opt(static_cast<std::size_t>(p));
  std::vector<std::string> opt_names;
  for (int j = 0; j < p; ++j) {
    opt[static_cast<std::size_t>(j)] = gaussian(rng, n) + 0.6 * unit(rng) * d;
    opt_names.push_back("w" + std::to_string(j + 1));
    names.push_back(opt_names.back());
  }

  // Modest direct treatment effect; several optional covariates matter.
  Eigen::VectorXd y = 0.15 * unit(rng) * d + gaussian(rng, n, 0.8);
  for (int j = 0; j < n_base; ++j) {
    y += 0.5 * unit(rng) * base[static_cast<std::size_t>(j)];
  }
  for (int j = 0; j < p; ++j) {
    const double g = (j == 0) ? 0.8 : 0.6 * unit(rng);
    y += g * opt[static_cast<std::size_t>(j)];
  }

  cols.push_back(y);
  cols.push_back(d);
  for (auto& b : base) cols.push_back(std::move(b));
  for (auto& w : opt) cols.push_back(std::move(w));

  SyntheticSearch out{ols::Dataset(names, std::move(cols)),
                      specsearch::SearchProblem{}};
  out.problem.outcome = "y";
  out.problem.treatment = "d";
  out.problem.base_covariates = base_names;
  out.problem.optional_covariates = opt_names;
  out.problem.alpha = 0.05;
  return out;
}

SyntheticSearch make_suppressor_problem() {
  std::mt19937_64 rng(20240817u);
  const Eigen::Index n = 160;

  // z2 suppresses the treatment effect: it is correlated with d and enters
  // the outcome with the opposite sign, so y ~ d alone looks null.
  const Eigen::VectorXd z1 = gaussian(rng, n);
  const Eigen::VectorXd z2 = gaussian(rng, n);
  const Eigen::VectorXd d = z2 + 0.7 * gaussian(rng, n);
  const Eigen::VectorXd y =
      0.5 * d - 0.76 * z2 + 0.1 * z1 + 0.45 * gaussian(rng, n);

  SyntheticSearch out{
      ols::Dataset({"y", "d", "z1", "z2"}, {y, d, z1, z2}),
      specsearch::SearchProblem{}};
  out.problem.outcome = "y";
  out.problem.treatment = "d";
  out.problem.optional_covariates = {"z1", "z2"};
  out.problem.alpha = 0.05;
  return out;
}

}  // namespace rvi::testing
