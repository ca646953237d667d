#include "rvi/specsearch.hpp"

#include <cmath>

#include <doctest.h>

#include "rvi/dist.hpp"
#include "rvi/errors.hpp"
#include "rvi/ols.hpp"
#include "synthetic.hpp"

using rvi::specsearch::enumerate;
using rvi::specsearch::EnumerateOptions;
using rvi::specsearch::joint_strengths;
using rvi::specsearch::phack_bound;
using rvi::specsearch::SearchProblem;
using rvi::specsearch::SpecSearchResult;

TEST_CASE("empty optional set: bound is the df-corrected base |t|") {
  auto synth = rvi::testing::make_search_problem(1);
  synth.problem.optional_covariates.clear();
  const auto base = rvi::ols::restricted_fit(
      synth.data,
      {synth.problem.outcome, synth.problem.treatment,
       synth.problem.base_covariates, true},
      0.0);
  const double df = static_cast<double>(base.df);
  const double bound = phack_bound(synth.data, synth.problem);
  CHECK(bound == doctest::Approx(std::fabs(base.t()) *
                                 std::sqrt((df - 1.0) / df)).epsilon(1e-12));

  const SpecSearchResult res = enumerate(synth.data, synth.problem);
  CHECK(res.n_total == 1);
  CHECK(*res.exact_max_t == doctest::Approx(std::fabs(base.t())).epsilon(1e-12));
  CHECK(res.argmax_subset.empty());
  // The base specification itself sits in the df bookkeeping corner: the
  // single enumerated |t| exceeds the m = 1 bound by sqrt(df/(df-1)).
  CHECK(*res.exact_max_t >= res.bound);
}

TEST_CASE("every enumerated |t| is dominated by the closed-form bound") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    auto synth = rvi::testing::make_search_problem(seed, 8);
    const double bound = phack_bound(synth.data, synth.problem);
    const SpecSearchResult res = enumerate(synth.data, synth.problem);
    CAPTURE(seed);
    CHECK(res.bound == bound);
    CHECK(*res.exact_max_t <= bound * (1.0 + 1e-9));  // ulp slack at ties
    CHECK(res.n_total ==
          (std::uint64_t{1} << synth.problem.optional_covariates.size()));
    CHECK(res.n_significant <= res.n_total);
    CHECK(res.n_skipped_singular == 0);
  }
}

TEST_CASE("strict df mode never exceeds the default bound") {
  for (std::uint64_t seed = 30; seed <= 40; ++seed) {
    auto synth = rvi::testing::make_search_problem(seed, 8);
    const double loose = phack_bound(synth.data, synth.problem, false);
    const double strict = phack_bound(synth.data, synth.problem, true);
    CHECK(strict <= loose);
    const SpecSearchResult res = enumerate(synth.data, synth.problem);
    CAPTURE(seed);
    CHECK(*res.exact_max_t <= loose);
  }
}

TEST_CASE("enumeration is identical for 1, 2 and many workers") {
  auto synth = rvi::testing::make_search_problem(7, 9);
  EnumerateOptions one{24, 1};
  EnumerateOptions two{24, 2};
  EnumerateOptions many{24, 16};
  const SpecSearchResult r1 = enumerate(synth.data, synth.problem, one);
  const SpecSearchResult r2 = enumerate(synth.data, synth.problem, two);
  const SpecSearchResult rn = enumerate(synth.data, synth.problem, many);
  CHECK(r1.exact_max_t == r2.exact_max_t);  // bitwise identical
  CHECK(r1.exact_max_t == rn.exact_max_t);
  CHECK(r1.argmax_subset == r2.argmax_subset);
  CHECK(r1.argmax_subset == rn.argmax_subset);
  CHECK(r1.n_significant == r2.n_significant);
  CHECK(r1.n_significant == rn.n_significant);
}

TEST_CASE("the constructed suppressor is found by enumeration") {
  const auto synth = rvi::testing::make_suppressor_problem();
  const auto base = rvi::ols::restricted_fit(
      synth.data, {"y", "d", {}, true}, 0.0);
  const double t_star_base = rvi::dist::t_critical(0.05, base.df);
  REQUIRE(std::fabs(base.t()) < t_star_base);  // base model insignificant

  const SpecSearchResult res = enumerate(synth.data, synth.problem);
  CHECK(res.n_significant >= 1);
  CHECK(*res.exact_max_t > t_star_base);
  REQUIRE(!res.argmax_subset.empty());
  CHECK(std::find(res.argmax_subset.begin(), res.argmax_subset.end(), "z2") !=
        res.argmax_subset.end());
  CHECK(*res.exact_max_t <= res.bound);
}

TEST_CASE("removing an optional covariate never increases the exact max") {
  auto synth = rvi::testing::make_search_problem(11, 6);
  const SpecSearchResult full = enumerate(synth.data, synth.problem);
  auto reduced = synth.problem;
  while (reduced.optional_covariates.size() > 1) {
    reduced.optional_covariates.pop_back();
    const SpecSearchResult res = enumerate(synth.data, reduced);
    CHECK(*res.exact_max_t <= *full.exact_max_t + 1e-12);
  }
}

TEST_CASE("cap refusal and duplicate validation") {
  auto synth = rvi::testing::make_search_problem(3, 6);
  EnumerateOptions tight;
  tight.cap = 2;
  if (synth.problem.optional_covariates.size() > 2) {
    CHECK_THROWS_AS(enumerate(synth.data, synth.problem, tight),
                    rvi::usage_error);
  }
  auto bad = synth.problem;
  bad.base_covariates.push_back(bad.optional_covariates.front());
  CHECK_THROWS_AS(enumerate(synth.data, bad), rvi::data_error);
}

TEST_CASE("singular subsets are skipped and counted") {
  auto synth = rvi::testing::make_search_problem(13, 4);
  // Append an exact copy of the first optional column under a new name:
  // every subset containing both is singular.
  const auto& names = synth.data.names();
  std::vector<std::string> new_names(names);
  new_names.push_back("dup");
  std::vector<Eigen::VectorXd> cols;
  for (const auto& n : names) cols.push_back(synth.data.column(n));
  cols.push_back(synth.data.column(synth.problem.optional_covariates.front()));
  rvi::ols::Dataset with_dup(new_names, cols);

  auto problem = synth.problem;
  problem.optional_covariates.push_back("dup");
  const std::size_t p = problem.optional_covariates.size();
  const SpecSearchResult res = enumerate(with_dup, problem);
  // Subsets containing both the original and the duplicate: 2^(p-2).
  CHECK(res.n_skipped_singular == (std::uint64_t{1} << (p - 2)));
  CHECK(*res.exact_max_t > 0.0);
}

TEST_CASE("joint strengths are in [0, 1] and grow with the optional set") {
  auto synth = rvi::testing::make_search_problem(17, 8);
  const auto full = joint_strengths(synth.data, synth.problem);
  CHECK(full.r2_y >= 0.0);
  CHECK(full.r2_y <= 1.0);
  CHECK(full.r2_d >= 0.0);
  CHECK(full.r2_d <= 1.0);
  auto reduced = synth.problem;
  reduced.optional_covariates.pop_back();
  const auto less = joint_strengths(synth.data, reduced);
  CHECK(less.r2_y <= full.r2_y + 1e-12);
  CHECK(less.r2_d <= full.r2_d + 1e-12);
}
