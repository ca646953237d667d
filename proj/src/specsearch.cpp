#include "rvi/specsearch.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "rvi/dist.hpp"
#include "rvi/errors.hpp"
#include "rvi/robustness.hpp"

namespace rvi::specsearch {

namespace {

void check_problem(const ols::Dataset& data, const SearchProblem& problem) {
  for (const auto& opt : problem.optional_covariates) {
    if (std::find(problem.base_covariates.begin(),
                  problem.base_covariates.end(),
                  opt) != problem.base_covariates.end()) {
      throw data_error("optional covariate also listed as base: " + opt);
    }
    if (!data.has(opt)) throw data_error("unknown column: " + opt);
  }
  for (std::size_t i = 0; i < problem.optional_covariates.size(); ++i) {
    for (std::size_t j = i + 1; j < problem.optional_covariates.size(); ++j) {
      if (problem.optional_covariates[i] == problem.optional_covariates[j]) {
        throw data_error("duplicate optional covariate: " +
                         problem.optional_covariates[i]);
      }
    }
  }
}

double rss_after(const ols::Dataset& data, std::string_view target,
                 std::span<const std::string> on) {
  return ols::span_residuals(data, target, on).squaredNorm();
}

// 1 - RSS_long / RSS_short, clamped into [0, 1] against roundoff.
double partial_r2_from_rss(double rss_short, double rss_long) {
  if (rss_short <= 0.0) return 0.0;
  return std::clamp(1.0 - rss_long / rss_short, 0.0, 1.0);
}

struct Partial {
  double max_t = -1.0;
  std::uint64_t argmax_mask = 0;
  std::uint64_t n_significant = 0;
  std::uint64_t n_skipped = 0;
  std::uint64_t n_fitted = 0;

  void absorb(double t, std::uint64_t mask) {
    ++n_fitted;
    if (t > max_t || (t == max_t && mask < argmax_mask)) {
      max_t = t;
      argmax_mask = mask;
    }
  }

  void merge(const Partial& other) {
    if (other.max_t > max_t ||
        (other.max_t == max_t && other.argmax_mask < argmax_mask)) {
      max_t = other.max_t;
      argmax_mask = other.argmax_mask;
    }
    n_significant += other.n_significant;
    n_skipped += other.n_skipped;
    n_fitted += other.n_fitted;
  }
};

}  // namespace

ovb::StrengthPair joint_strengths(const ols::Dataset& data,
                                  const SearchProblem& problem) {
  check_problem(data, problem);
  std::vector<std::string> d_base;  // {treatment} + base
  d_base.reserve(problem.base_covariates.size() + 1);
  d_base.push_back(problem.treatment);
  d_base.insert(d_base.end(), problem.base_covariates.begin(),
                problem.base_covariates.end());

  std::vector<std::string> d_base_opt = d_base;
  d_base_opt.insert(d_base_opt.end(), problem.optional_covariates.begin(),
                    problem.optional_covariates.end());

  std::vector<std::string> base_opt = problem.base_covariates;
  base_opt.insert(base_opt.end(), problem.optional_covariates.begin(),
                  problem.optional_covariates.end());

  ovb::StrengthPair s;
  s.r2_y = partial_r2_from_rss(rss_after(data, problem.outcome, d_base),
                               rss_after(data, problem.outcome, d_base_opt));
  s.r2_d = partial_r2_from_rss(
      rss_after(data, problem.treatment, problem.base_covariates),
      rss_after(data, problem.treatment, base_opt));
  return s;
}

double phack_bound(const ols::Dataset& data, const SearchProblem& problem,
                   bool strict_df) {
  check_problem(data, problem);
  const ols::ModelSpec base_spec{problem.outcome, problem.treatment,
                                 problem.base_covariates, true};
  const ovb::RestrictedFit base =
      ols::restricted_fit(data, base_spec, problem.null_value);
  const ovb::StrengthPair joint = joint_strengths(data, problem);
  const int p = static_cast<int>(problem.optional_covariates.size());
  const int m = strict_df ? std::max(p, 1) : 1;
  return robustness::t_max(base, {joint.r2_y, joint.r2_d}, m).t_max;
}

SpecSearchResult enumerate(const ols::Dataset& data,
                           const SearchProblem& problem,
                           const EnumerateOptions& options) {
  check_problem(data, problem);
  const std::size_t p = problem.optional_covariates.size();
  if (static_cast<int>(p) > options.cap) {
    throw usage_error("enumeration over " + std::to_string(p) +
                      " optional covariates exceeds the cap of " +
                      std::to_string(options.cap) +
                      "; use the closed-form bound instead");
  }

  SpecSearchResult result;
  result.bound = phack_bound(data, problem);
  result.n_total = std::uint64_t{1} << p;

  // Critical values depend only on how many optional columns are active.
  const Eigen::Index n = data.n_rows();
  const long k_base =
      2 + static_cast<long>(problem.base_covariates.size());  // icept + D
  std::vector<double> crit(p + 1);
  for (std::size_t j = 0; j <= p; ++j) {
    const long df = static_cast<long>(n) - k_base - static_cast<long>(j);
    if (df < 1) throw data_error("too few rows for the largest specification");
    crit[j] = dist::t_critical(problem.alpha, df);
  }

  const auto fit_subset = [&](std::uint64_t mask, Partial& acc) {
    ols::ModelSpec spec;
    spec.outcome = problem.outcome;
    spec.treatment = problem.treatment;
    spec.covariates = problem.base_covariates;
    int active = 0;
    for (std::size_t j = 0; j < p; ++j) {
      if (mask >> j & 1) {
        spec.covariates.push_back(problem.optional_covariates[j]);
        ++active;
      }
    }
    try {
      const ols::FitResult res = ols::fit(data, spec);
      const double t = std::fabs(
          (res.coefficient(problem.treatment) - problem.null_value) /
          res.std_error(problem.treatment));
      if (t > crit[static_cast<std::size_t>(active)]) ++acc.n_significant;
      acc.absorb(t, mask);
    } catch (const singular_design_error&) {
      ++acc.n_skipped;
    }
  };

  unsigned workers = options.threads != 0 ? options.threads
                                          : std::thread::hardware_concurrency();
  workers = std::max(1u, workers);
  workers = static_cast<unsigned>(
      std::min<std::uint64_t>(workers, result.n_total));

  // The index space is split into contiguous ranges; subsets are visited in
  // Gray-code order (mask = i ^ (i >> 1)) so successive designs differ by
  // one column. Every fit is from scratch, so visit order cannot change any
  // value; ties in the max go to the smallest mask.
  std::vector<Partial> partials(workers);
  std::vector<std::exception_ptr> failures(workers);
  const std::uint64_t chunk = (result.n_total + workers - 1) / workers;

  auto run_range = [&](unsigned w) {
    const std::uint64_t lo = w * chunk;
    const std::uint64_t hi = std::min(result.n_total, lo + chunk);
    try {
      for (std::uint64_t i = lo; i < hi; ++i) {
        fit_subset(i ^ (i >> 1), partials[w]);
      }
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    run_range(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back(run_range, w);
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  Partial total;
  for (const auto& part : partials) total.merge(part);
  result.n_skipped_singular = total.n_skipped;
  result.n_significant = total.n_significant;
  if (total.n_fitted == 0) {
    throw data_error("every covariate subset produced a singular design");
  }
  result.exact_max_t = total.max_t;
  for (std::size_t j = 0; j < p; ++j) {
    if (total.argmax_mask >> j & 1) {
      result.argmax_subset.push_back(problem.optional_covariates[j]);
    }
  }
  return result;
}

}  // namespace rvi::specsearch
