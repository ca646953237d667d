#include "rvi/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rvi/csv.hpp"
#include "rvi/dist.hpp"
#include "rvi/errors.hpp"
#include "rvi/ols.hpp"
#include "rvi/robustness.hpp"
#include "rvi/specsearch.hpp"

using nlohmann::json;

namespace rvi::cli {

namespace {

std::string fmt(double x, int sig = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", sig, x);
  return buf;
}

// Percentages are printed with 3 significant digits; JSON carries the raw
// fractions.
std::string fmt_pct(double fraction) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g%%", fraction * 100.0);
  return buf;
}

std::string fmt_pct_opt(const std::optional<double>& v) {
  return v ? fmt_pct(*v) : std::string("impossible");
}

std::string pad(const std::string& s, int width) {
  if (static_cast<int>(s.size()) >= width) return s;
  return std::string(width - s.size(), ' ') + s;
}

json json_or_null(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

// Inputs for the summary-statistic verbs: either t directly or the
// (estimate, std error) pair; both together are cross-checked.
struct FitFlags {
  double t = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  long df = 0;
  bool has_t = false;
  bool has_estimate = false;
  bool has_se = false;

  void add_to(CLI::App& app, bool df_required = true) {
    app.add_option("--t", t, "observed t-statistic");
    app.add_option("--estimate", estimate, "treatment coefficient estimate");
    app.add_option("--se", std_error, "classical standard error");
    auto* df_opt = app.add_option("--df", df, "residual degrees of freedom");
    if (df_required) df_opt->required();
  }

  void read_counts(const CLI::App& app) {
    has_t = app.count("--t") > 0;
    has_estimate = app.count("--estimate") > 0;
    has_se = app.count("--se") > 0;
  }

  ovb::RestrictedFit to_fit(double null_value) const {
    if (has_estimate != has_se) {
      throw usage_error("--estimate and --se must be given together");
    }
    if (!has_t && !has_estimate) {
      throw usage_error("supply --t or --estimate/--se");
    }
    if (df < 2) throw usage_error("--df must be >= 2");
    if (has_estimate && !(std_error > 0.0)) {
      throw usage_error("--se must be > 0");
    }
    ovb::RestrictedFit fit;
    if (has_estimate) {
      fit = ovb::RestrictedFit{estimate, std_error, df, null_value};
      if (has_t && std::fabs(fit.t() - t) > 1e-6) {
        throw usage_error("--t disagrees with (estimate - null) / se: " +
                          fmt(t) + " vs " + fmt(fit.t()));
      }
    } else {
      fit = ovb::RestrictedFit::from_t(t, df, null_value);
    }
    fit.validate();
    return fit;
  }
};

OutputFormat parse_format(const std::string& s) {
  if (s == "text") return OutputFormat::text;
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  throw usage_error("unknown format: " + s);
}

void emit(const std::string& rendered, const std::string& output_path,
          std::ostream& out) {
  if (output_path.empty()) {
    out << rendered;
    return;
  }
  std::ofstream f(output_path);
  if (!f) throw data_error("cannot open output file: " + output_path);
  f << rendered;
}

std::string render_json(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// summary / analyze rendering

json report_to_json(const ovb::RestrictedFit& fit, bool has_estimate,
                    const robustness::RobustnessReport& rep) {
  const bool already =
      rep.xrvi1 == 0.0 && rep.rvi == 0.0 && rep.xrvi0 && *rep.xrvi0 == 0.0;
  json j{
      {"alpha", rep.alpha},
      {"already_significant", already},
      {"critical_value", dist::t_critical(rep.alpha, fit.df - 1)},
      {"df", fit.df},
      {"estimate", has_estimate ? json(fit.estimate) : json(nullptr)},
      {"null_value", fit.null_value},
      {"rvi", rep.rvi},
      {"std_error", has_estimate ? json(fit.std_error) : json(nullptr)},
      {"t", fit.t()},
      {"xrvi0", json_or_null(rep.xrvi0)},
      {"xrvi0_impossible", !rep.xrvi0.has_value()},
      {"xrvi1", rep.xrvi1},
  };
  json at = json::array();
  for (const auto& [cap, value] : rep.xrvi_at) {
    at.push_back(json{{"impossible", !value.has_value()},
                      {"r2d_max", cap},
                      {"value", json_or_null(value)}});
  }
  j["xrvi_at"] = at;
  return j;
}

std::string report_to_text(const ovb::RestrictedFit& fit, bool has_estimate,
                           const robustness::RobustnessReport& rep) {
  std::ostringstream os;
  const int w = 11;
  os << pad("estimate", w) << pad("std.error", w) << pad("t", w) << pad("df", w)
     << pad("XRVI1", w) << pad("RVI", w) << pad("XRVI0", w) << "\n";
  os << pad(has_estimate ? fmt(fit.estimate) : "-", w)
     << pad(has_estimate ? fmt(fit.std_error) : "-", w) << pad(fmt(fit.t()), w)
     << pad(std::to_string(fit.df), w) << pad(fmt_pct(rep.xrvi1), w)
     << pad(fmt_pct(rep.rvi), w) << pad(fmt_pct_opt(rep.xrvi0), w) << "\n";
  for (const auto& [cap, value] : rep.xrvi_at) {
    os << "XRVI at r2d_max = " << fmt(cap) << ": " << fmt_pct_opt(value)
       << "\n";
  }
  os << "note: null value = " << fmt(fit.null_value)
     << ", alpha = " << fmt(rep.alpha) << ", critical value t*(alpha, df-1) = "
     << fmt(dist::t_critical(rep.alpha, fit.df - 1)) << "\n";
  if (rep.xrvi1 == 0.0 && rep.rvi == 0.0 && rep.xrvi0 && *rep.xrvi0 == 0.0) {
    os << "already significant at this level; no added covariate is needed\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// subcommand state

struct CommonFlags {
  AnalysisConfig cfg;
  std::string format = "text";  // parsed into cfg.format after CLI11
  std::string output;

  void add_to(CLI::App& app) {
    app.add_option("--alpha", cfg.alpha, "significance level (default 0.05)");
    app.add_option("--null", cfg.null_value,
                   "null-hypothesis value (default 0)");
    app.add_option("--format", format, "output format: text, json, csv");
    app.add_option("--output", output, "write the report to this file");
  }

  // Resolves the format string and validates the shared invariants.
  const AnalysisConfig& resolve(Mode mode) {
    cfg.mode = mode;
    cfg.format = parse_format(format);
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
      throw usage_error("--alpha must be in (0, 1)");
    }
    if (cfg.grid_resolution < 2) {
      throw usage_error("grid resolution must be >= 2");
    }
    return cfg;
  }
};

struct SummaryArgs {
  FitFlags fit;
  CommonFlags common;
  std::vector<double> xrvi_at;
  bool q95 = false;
};

struct AnalyzeArgs {
  std::string data_path;
  std::string outcome;
  std::string treatment;
  std::vector<std::string> covariates;
  std::vector<std::string> benchmarks;
  CommonFlags common;
};

struct GridArgs {
  FitFlags fit;
  CommonFlags common;
  double r2y_max = 0.0;
  double r2d_max = 0.0;
};

struct SearchArgs {
  std::string data_path;
  std::string outcome;
  std::string treatment;
  std::vector<std::string> base;
  std::vector<std::string> optional;
  bool strict_df = false;
  int cap = 24;
  CommonFlags common;
};

int cmd_summary(SummaryArgs& a, std::ostream& out) {
  const AnalysisConfig& cfg = a.common.resolve(Mode::summary);
  if (cfg.format == OutputFormat::csv) {
    throw usage_error("csv output is only available for grid");
  }
  const ovb::RestrictedFit fit = a.fit.to_fit(cfg.null_value);
  std::vector<double> extras = a.xrvi_at;
  for (double cap : extras) {
    if (!(cap >= 0.0 && cap <= 1.0)) {
      throw usage_error("--xrvi-at values must be in [0, 1]");
    }
  }
  if (a.q95) extras.push_back(robustness::q95_r2d(fit.df));
  const auto rep = robustness::report(fit, cfg.alpha, extras);
  const std::string rendered =
      cfg.format == OutputFormat::json
          ? render_json(report_to_json(fit, a.fit.has_estimate, rep))
          : report_to_text(fit, a.fit.has_estimate, rep);
  emit(rendered, a.common.output, out);
  return 0;
}

int cmd_analyze(AnalyzeArgs& a, std::ostream& out) {
  const AnalysisConfig& cfg = a.common.resolve(Mode::data);
  if (cfg.format == OutputFormat::csv) {
    throw usage_error("csv output is only available for grid");
  }
  const ols::Dataset data = csv::read_file(a.data_path);
  const ols::ModelSpec spec{a.outcome, a.treatment, a.covariates, true};
  const ovb::RestrictedFit fit =
      ols::restricted_fit(data, spec, cfg.null_value);
  const auto rep = robustness::report(fit, cfg.alpha, {});

  struct Benchmark {
    std::string name;
    ovb::StrengthPair strength;
    bool below_rvi = false;
  };
  std::vector<Benchmark> benchmarks;
  for (const auto& name : a.benchmarks) {
    Benchmark b;
    b.name = name;
    b.strength = ols::observed_strength(data, spec, name, cfg.null_value);
    b.below_rvi = b.strength.r2_y < rep.rvi && b.strength.r2_d < rep.rvi;
    benchmarks.push_back(std::move(b));
  }
  const auto verdict = [](bool below) {
    return below ? "below RVI: cannot overturn"
                 : "at or above RVI: inconclusive";
  };

  if (cfg.format == OutputFormat::json) {
    json j = report_to_json(fit, true, rep);
    j["n"] = data.n_rows();
    j["dropped_rows"] = data.dropped_rows();
    j["outcome"] = a.outcome;
    j["treatment"] = a.treatment;
    j["covariates"] = a.covariates;
    json bj = json::array();
    for (const auto& b : benchmarks) {
      bj.push_back(json{{"name", b.name},
                        {"r2_d", b.strength.r2_d},
                        {"r2_y", b.strength.r2_y},
                        {"verdict", verdict(b.below_rvi)}});
    }
    j["benchmarks"] = bj;
    emit(render_json(j), a.common.output, out);
    return 0;
  }

  std::ostringstream os;
  os << "data: " << data.n_rows() << " rows";
  if (data.dropped_rows() > 0) {
    os << " (" << data.dropped_rows() << " dropped: missing values)";
  }
  os << "\nmodel: " << a.outcome << " ~ " << a.treatment;
  for (const auto& c : a.covariates) os << " + " << c;
  os << " + intercept\n";
  os << report_to_text(fit, true, rep);
  if (!benchmarks.empty()) {
    os << "benchmarks:\n";
    for (const auto& b : benchmarks) {
      os << "  " << b.name << ": r2_y = " << fmt(b.strength.r2_y)
         << ", r2_d = " << fmt(b.strength.r2_d) << " -> "
         << verdict(b.below_rvi) << "\n";
    }
  }
  emit(os.str(), a.common.output, out);
  return 0;
}

int cmd_grid(GridArgs& a, std::ostream& out) {
  const AnalysisConfig& cfg = a.common.resolve(Mode::summary);
  const ovb::RestrictedFit fit = a.fit.to_fit(cfg.null_value);
  const GridSheet sheet =
      make_grid(fit, a.r2y_max, a.r2d_max, cfg.grid_resolution, cfg.alpha);

  std::string rendered;
  if (cfg.format == OutputFormat::json) {
    json j{{"alpha", cfg.alpha},
           {"axis_d", sheet.axis_d},
           {"axis_y", sheet.axis_y},
           {"critical_value", sheet.critical_value},
           {"df", fit.df},
           {"null_value", fit.null_value},
           {"t", fit.t()},
           {"t_values", sheet.t_values}};
    rendered = render_json(j);
  } else if (cfg.format == OutputFormat::csv) {
    std::ostringstream os;
    for (double d : sheet.axis_d) os << "," << fmt(d, 12);
    os << "\n";
    for (std::size_t i = 0; i < sheet.axis_y.size(); ++i) {
      os << fmt(sheet.axis_y[i], 12);
      for (double v : sheet.t_values[i]) os << "," << fmt(v, 12);
      os << "\n";
    }
    os << "critical_value," << fmt(sheet.critical_value, 12) << "\n";
    rendered = os.str();
  } else {
    std::ostringstream os;
    const int w = 10;
    os << pad("r2y\\r2d", w);
    for (double d : sheet.axis_d) os << pad(fmt(d, 4), w);
    os << "\n";
    for (std::size_t i = 0; i < sheet.axis_y.size(); ++i) {
      os << pad(fmt(sheet.axis_y[i], 4), w);
      for (double v : sheet.t_values[i]) os << pad(fmt(v, 4), w);
      os << "\n";
    }
    os << "critical value t*(alpha, df-1) = " << fmt(sheet.critical_value)
       << "\n";
    rendered = os.str();
  }
  emit(rendered, a.common.output, out);
  return 0;
}

unsigned env_thread_cap() {
  const char* env = std::getenv("RVI_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (end == nullptr || *end != '\0' || v == 0) return 0;
  return static_cast<unsigned>(std::min<unsigned long>(v, 1u << 16));
}

json search_base_json(const ols::Dataset& data,
                      const specsearch::SearchProblem& problem,
                      const ovb::RestrictedFit& base, double bound,
                      bool strict_df) {
  const int p = static_cast<int>(problem.optional_covariates.size());
  const ovb::StrengthPair joint = specsearch::joint_strengths(data, problem);
  // "bound" is the role, "t_max" the quantity: the closed-form maximum
  // adjusted t-statistic at the joint strengths.
  return json{{"alpha", problem.alpha},
              {"bound", bound},
              {"critical_value", dist::t_critical(problem.alpha, base.df - 1)},
              {"df", base.df},
              {"m", strict_df ? std::max(p, 1) : 1},
              {"null_value", problem.null_value},
              {"r2_d_joint", joint.r2_d},
              {"r2_y_joint", joint.r2_y},
              {"strict_df", strict_df},
              {"t_base", base.t()},
              {"t_max", bound}};
}

void search_base_text(std::ostream& os, const ols::Dataset& data,
                      const specsearch::SearchProblem& problem,
                      const ovb::RestrictedFit& base, double bound) {
  const ovb::StrengthPair joint = specsearch::joint_strengths(data, problem);
  os << "base model: " << problem.outcome << " ~ " << problem.treatment;
  for (const auto& c : problem.base_covariates) os << " + " << c;
  os << " + intercept  (df = " << base.df << ", t = " << fmt(base.t())
     << ")\n";
  os << "joint strength of the " << problem.optional_covariates.size()
     << " optional covariates: r2_y = " << fmt(joint.r2_y)
     << ", r2_d = " << fmt(joint.r2_d) << "\n";
  os << "closed-form bound on |t| over all "
     << (std::uint64_t{1} << problem.optional_covariates.size())
     << " specifications: " << fmt(bound) << "\n";
}

specsearch::SearchProblem to_problem(const SearchArgs& a,
                                     const AnalysisConfig& cfg) {
  specsearch::SearchProblem problem;
  problem.outcome = a.outcome;
  problem.treatment = a.treatment;
  problem.base_covariates = a.base;
  problem.optional_covariates = a.optional;
  problem.null_value = cfg.null_value;
  problem.alpha = cfg.alpha;
  return problem;
}

int cmd_bound(SearchArgs& a, std::ostream& out) {
  const AnalysisConfig& cfg = a.common.resolve(Mode::data);
  if (cfg.format == OutputFormat::csv) {
    throw usage_error("csv output is only available for grid");
  }
  const ols::Dataset data = csv::read_file(a.data_path);
  const specsearch::SearchProblem problem = to_problem(a, cfg);
  const ols::ModelSpec base_spec{a.outcome, a.treatment, a.base, true};
  const ovb::RestrictedFit base =
      ols::restricted_fit(data, base_spec, cfg.null_value);
  const double bound = specsearch::phack_bound(data, problem, a.strict_df);

  if (cfg.format == OutputFormat::json) {
    emit(render_json(search_base_json(data, problem, base, bound, a.strict_df)),
         a.common.output, out);
    return 0;
  }
  std::ostringstream os;
  search_base_text(os, data, problem, base, bound);
  emit(os.str(), a.common.output, out);
  return 0;
}

int cmd_enumerate(SearchArgs& a, std::ostream& out, std::ostream& err) {
  const AnalysisConfig& cfg = a.common.resolve(Mode::data);
  if (cfg.format == OutputFormat::csv) {
    throw usage_error("csv output is only available for grid");
  }
  const ols::Dataset data = csv::read_file(a.data_path);
  const specsearch::SearchProblem problem = to_problem(a, cfg);
  const ols::ModelSpec base_spec{a.outcome, a.treatment, a.base, true};
  const ovb::RestrictedFit base =
      ols::restricted_fit(data, base_spec, cfg.null_value);

  const int p = static_cast<int>(a.optional.size());
  const bool cap_exceeded = p > a.cap;
  if (cap_exceeded) {
    const double bound = specsearch::phack_bound(data, problem, a.strict_df);
    err << "notice: " << p << " optional covariates exceed the enumeration cap"
        << " of " << a.cap << "; reporting the closed-form bound only\n";
    if (cfg.format == OutputFormat::json) {
      json j = search_base_json(data, problem, base, bound, a.strict_df);
      j["cap_exceeded"] = true;
      emit(render_json(j), a.common.output, out);
    } else {
      std::ostringstream os;
      search_base_text(os, data, problem, base, bound);
      os << "enumeration skipped (cap exceeded)\n";
      emit(os.str(), a.common.output, out);
    }
    return 0;
  }

  specsearch::EnumerateOptions options;
  options.cap = a.cap;
  options.threads = env_thread_cap();
  const specsearch::SpecSearchResult res =
      specsearch::enumerate(data, problem, options);

  if (cfg.format == OutputFormat::json) {
    json j = search_base_json(data, problem, base, res.bound, a.strict_df);
    j["cap_exceeded"] = false;
    j["exact_max_t"] = json_or_null(res.exact_max_t);
    j["argmax_subset"] = res.argmax_subset;
    j["n_significant"] = res.n_significant;
    j["n_skipped_singular"] = res.n_skipped_singular;
    j["n_total"] = res.n_total;
    emit(render_json(j), a.common.output, out);
    return 0;
  }
  std::ostringstream os;
  search_base_text(os, data, problem, base, res.bound);
  os << "exact max |t| = " << fmt(*res.exact_max_t) << " at subset {";
  for (std::size_t i = 0; i < res.argmax_subset.size(); ++i) {
    os << (i ? ", " : "") << res.argmax_subset[i];
  }
  os << "}\n";
  os << "significant at alpha = " << fmt(cfg.alpha) << ": "
     << res.n_significant << " of " << res.n_total << " specifications";
  if (res.n_skipped_singular > 0) {
    os << " (" << res.n_skipped_singular << " singular subsets skipped)";
  }
  os << "\n";
  emit(os.str(), a.common.output, out);
  return 0;
}

}  // namespace

GridSheet make_grid(const ovb::RestrictedFit& fit, double r2_y_max,
                    double r2_d_max, int resolution, double alpha) {
  fit.validate();
  if (!(r2_y_max >= 0.0 && r2_y_max < 1.0) ||
      !(r2_d_max >= 0.0 && r2_d_max < 1.0)) {
    throw usage_error("grid bounds must be in [0, 1)");
  }
  if (resolution < 2) throw usage_error("grid resolution must be >= 2");

  const auto axis = [&](double bound) {
    if (bound == 0.0) return std::vector<double>{0.0};
    std::vector<double> v(static_cast<std::size_t>(resolution));
    for (int i = 0; i < resolution; ++i) {
      v[static_cast<std::size_t>(i)] = bound * i / (resolution - 1);
    }
    v.back() = bound;
    return v;
  };

  GridSheet sheet;
  sheet.axis_y = axis(r2_y_max);
  sheet.axis_d = axis(r2_d_max);
  sheet.critical_value = dist::t_critical(alpha, fit.df - 1);
  sheet.t_values.resize(sheet.axis_y.size());
  for (std::size_t i = 0; i < sheet.axis_y.size(); ++i) {
    auto& row = sheet.t_values[i];
    row.resize(sheet.axis_d.size());
    for (std::size_t j = 0; j < sheet.axis_d.size(); ++j) {
      row[j] = ovb::adjust(fit, {sheet.axis_y[i], sheet.axis_d[j]})
                   .t_adversarial;
    }
  }
  return sheet;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{
      "rvi: sensitivity analysis for statistically insignificant OLS "
      "results.\nComputes how strong added covariates must be, in partial-R2 "
      "terms, to overturn an insignificant t-statistic, and bounds the "
      "maximum |t| attainable by covariate-specification search."};
  app.require_subcommand(1);

  SummaryArgs sa;
  auto* summary = app.add_subcommand(
      "summary", "robustness values from summary statistics");
  sa.fit.add_to(*summary);
  sa.common.add_to(*summary);
  summary->add_option("--xrvi-at", sa.xrvi_at,
                      "also report XRVI at these r2_d caps");
  summary->add_flag("--q95", sa.q95,
                    "also report XRVI at the randomized-treatment 95th "
                    "percentile cap chi2(0.95)/df");

  AnalyzeArgs aa;
  auto* analyze =
      app.add_subcommand("analyze", "robustness values from a CSV dataset");
  analyze->add_option("--data", aa.data_path, "CSV file")->required();
  analyze->add_option("--outcome", aa.outcome, "outcome column")->required();
  analyze->add_option("--treatment", aa.treatment, "treatment column")
      ->required();
  analyze->add_option("--covariates", aa.covariates, "covariate columns")
      ->delimiter(',');
  analyze
      ->add_option("--benchmarks", aa.benchmarks,
                   "observed columns to benchmark latent strength against")
      ->delimiter(',');
  aa.common.add_to(*analyze);

  GridArgs ga;
  auto* grid = app.add_subcommand(
      "grid", "adjusted-|t| sheet over a rectangle of strength pairs");
  ga.fit.add_to(*grid);
  grid->add_option("--r2y-max", ga.r2y_max, "upper bound on r2_y")->required();
  grid->add_option("--r2d-max", ga.r2d_max, "upper bound on r2_d")->required();
  grid->add_option("--resolution", ga.common.cfg.grid_resolution,
                   "points per axis (default 101)");
  ga.common.add_to(*grid);

  SearchArgs ba;
  auto* bound = app.add_subcommand(
      "bound", "closed-form bound on |t| over covariate subsets");
  SearchArgs ea;
  auto* enumerate = app.add_subcommand(
      "enumerate", "exhaustive |t| search over covariate subsets");
  for (auto [cmd, state] : {std::pair{bound, &ba}, std::pair{enumerate, &ea}}) {
    cmd->add_option("--data", state->data_path, "CSV file")->required();
    cmd->add_option("--outcome", state->outcome, "outcome column")->required();
    cmd->add_option("--treatment", state->treatment, "treatment column")
        ->required();
    cmd->add_option("--base", state->base, "always-included covariates")
        ->delimiter(',');
    cmd->add_option("--optional", state->optional, "toggled covariates")
        ->delimiter(',')
        ->required();
    cmd->add_flag("--strict-df", state->strict_df,
                  "charge all optional columns in the degrees-of-freedom "
                  "correction instead of one");
    state->common.add_to(*cmd);
  }
  enumerate->add_option("--cap", ea.cap,
                        "maximum optional-covariate count to enumerate");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("rvi");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    sa.fit.read_counts(*summary);
    ga.fit.read_counts(*grid);
    if (summary->parsed()) return cmd_summary(sa, out);
    if (analyze->parsed()) return cmd_analyze(aa, out);
    if (grid->parsed()) return cmd_grid(ga, out);
    if (bound->parsed()) return cmd_bound(ba, out);
    if (enumerate->parsed()) return cmd_enumerate(ea, out, err);
    err << "error: no subcommand given\n";
    return 2;
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  } catch (const usage_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const data_error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const numerical_error& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace rvi::cli
