#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rvi/ols.hpp"

namespace rvi::specsearch {

// Covariate-specification search: base covariates are always included,
// optional covariates are toggled over all 2^p subsets.
struct SearchProblem {
  std::string outcome;
  std::string treatment;
  std::vector<std::string> base_covariates;
  std::vector<std::string> optional_covariates;
  double null_value = 0.0;
  double alpha = 0.05;
};

struct EnumerateOptions {
  int cap = 24;          // refuse enumeration beyond 2^cap subsets
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct SpecSearchResult {
  double bound = 0.0;                  // closed-form maximum t-statistic
  std::optional<double> exact_max_t;   // present when enumerated
  std::vector<std::string> argmax_subset;
  std::uint64_t n_significant = 0;     // at each specification's own df
  std::uint64_t n_total = 0;           // 2^p
  std::uint64_t n_skipped_singular = 0;
};

// Joint explanatory power of the full optional set: partial R2 with the
// outcome given treatment and base, and with the treatment given base.
ovb::StrengthPair joint_strengths(const ols::Dataset& data,
                                  const SearchProblem& problem);

// Closed-form upper bound on |t| over every covariate subset: the maximum
// adjusted t-statistic at the joint strengths of the full optional set,
// measured against the base model. Default uses the one-covariate
// degrees-of-freedom correction; strict_df charges all p optional columns.
double phack_bound(const ols::Dataset& data, const SearchProblem& problem,
                   bool strict_df = false);

// Exhaustive ground truth: fits every subset and records the maximum |t| of
// the treatment coefficient (ties broken by the smallest subset bitmask),
// the count significant at alpha, and any singular subsets skipped.
// Deterministic for any worker count. Throws usage_error above the cap.
SpecSearchResult enumerate(const ols::Dataset& data,
                           const SearchProblem& problem,
                           const EnumerateOptions& options = {});

}  // namespace rvi::specsearch
