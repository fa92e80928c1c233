#include "poissonplan/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "poissonplan/bounds.hpp"
#include "poissonplan/errors.hpp"
#include "poissonplan/exact.hpp"
#include "poissonplan/plan.hpp"
#include "poissonplan/simulate.hpp"

namespace poissonplan::cli {

namespace {

using nlohmann::ordered_json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Envelope {
  std::string command;
  ordered_json inputs = ordered_json::object();
  ordered_json results = ordered_json::object();
  std::vector<std::string> warnings;
};

ordered_json real_or_null(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

void require_finite(double value, const char* what) {
  if (!std::isfinite(value)) throw NumericError(std::string("non-finite result for ") + what);
}

unsigned threads_from_env() {
  const char* raw = std::getenv("PLAN_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (*end != '\0' || value < 1 || value > 4096) {
    throw ParameterError("PLAN_THREADS", "must be a positive integer");
  }
  return static_cast<unsigned>(value);
}

// Text rendering: one "key: value" line per scalar, nested objects flattened
// with dotted keys.
void write_text(std::ostream& out, const ordered_json& value, const std::string& prefix) {
  if (value.is_object()) {
    for (const auto& [key, item] : value.items()) {
      write_text(out, item, prefix.empty() ? key : prefix + "." + key);
    }
  } else if (value.is_array()) {
    for (std::size_t i = 0; i < value.size(); ++i) {
      write_text(out, value[i], prefix + "[" + std::to_string(i) + "]");
    }
  } else if (value.is_number_float()) {
    out << prefix << ": " << format_real(value.get<double>()) << '\n';
  } else if (value.is_string()) {
    out << prefix << ": " << value.get<std::string>() << '\n';
  } else {
    out << prefix << ": " << value.dump() << '\n';
  }
}

void emit(std::ostream& out, const Envelope& env, const std::string& format) {
  ordered_json doc;
  doc["tool_version"] = std::string(kToolVersion);
  doc["command"] = env.command;
  doc["inputs"] = env.inputs;
  doc["results"] = env.results;
  doc["warnings"] = env.warnings;
  if (format == "text") {
    write_text(out, doc, "");
  } else {
    out << doc.dump(2) << '\n';
  }
}

ordered_json plan_json(const PlanResult& plan) {
  ordered_json j;
  j["n"] = plan.n;
  j["rhs"] = real_or_null(plan.rhs);
  j["critical_exponent"] =
      plan.critical_exponent ? real_or_null(*plan.critical_exponent) : ordered_json(nullptr);
  j["method"] = std::string(to_string(plan.method));
  return j;
}

ordered_json point_json(const CoveragePoint& p, double delta) {
  ordered_json j;
  j["lambda"] = p.lambda;
  j["case"] = std::string(to_string(p.label));
  j["k_min"] = p.k_min;
  j["k_max"] = p.k_max;
  j["coverage"] = p.coverage;
  j["margin"] = p.coverage - (1.0 - delta);
  return j;
}

// Flags shared by the budget-taking subcommands.
struct BudgetFlags {
  double eps_a = 0.0;
  double eps_r = 0.0;
  double delta = 0.0;
  CLI::Option* eps_r_opt = nullptr;

  void add(CLI::App& app, bool eps_r_required) {
    app.add_option("--eps-a", eps_a, "absolute tolerance (> 0)")->required();
    eps_r_opt = app.add_option("--eps-r", eps_r, "relative tolerance in (0, 1)");
    if (eps_r_required) eps_r_opt->required();
    app.add_option("--delta", delta, "failure probability in (0, 1)")->required();
  }

  ErrorBudget budget() const { return ErrorBudget::make(eps_a, eps_r, delta); }

  void echo(ordered_json& inputs) const {
    inputs["eps-a"] = eps_a;
    if (eps_r_opt == nullptr || eps_r_opt->count() > 0) inputs["eps-r"] = eps_r;
    inputs["delta"] = delta;
  }
};

struct GridFlags {
  std::size_t points = kDefaultGridPoints;
  std::optional<double> lambda_min;
  std::optional<double> lambda_max;

  void add(CLI::App& app) {
    app.add_option("--grid-points", points, "log-spaced lambda points")->capture_default_str();
    app.add_option("--lambda-min", lambda_min, "smallest lambda (default eps-a / 100)");
    app.add_option("--lambda-max", lambda_max, "largest lambda (default 100 eps-a / eps-r)");
  }

  LambdaGrid grid(const ErrorBudget& budget) const {
    return LambdaGrid::scan(budget, lambda_min.value_or(budget.epsilon_a / 100.0),
                            lambda_max.value_or(100.0 * budget.crossover()), points);
  }

  void echo(ordered_json& inputs) const {
    inputs["grid-points"] = points;
    if (lambda_min) inputs["lambda-min"] = *lambda_min;
    if (lambda_max) inputs["lambda-max"] = *lambda_max;
  }
};

void write_csv(const std::string& path, const CoverageCurve& curve) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot open output file '" + path + "'");
  file << "lambda,case,k_min,k_max,coverage,margin\n";
  const double target = 1.0 - curve.budget.delta;
  for (const CoveragePoint& p : curve.points) {
    file << format_real(p.lambda) << ',' << to_string(p.label) << ',' << p.k_min << ','
         << p.k_max << ',' << format_real(p.coverage) << ',' << format_real(p.coverage - target)
         << '\n';
  }
  file.flush();
  if (!file) throw IoError("failed writing output file '" + path + "'");
}

}  // namespace

std::string format_real(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rigorous sample sizes for estimating a Poisson mean", "poisson-plan"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  std::string format = "json";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  // size
  CLI::App* size = app.add_subcommand("size", "compute a sample size");
  BudgetFlags size_budget;
  size_budget.add(*size, false);
  std::string method = "formula";
  size->add_option("--method", method, "formula | exact | normal")
      ->check(CLI::IsMember({"formula", "exact", "normal"}))
      ->capture_default_str();
  std::optional<double> size_lambda;
  size->add_option("--lambda", size_lambda, "assumed lambda (normal method only)");
  std::optional<std::int64_t> n_hint;
  size->add_option("--n-hint", n_hint, "starting n for the exact search (default: formula n)");
  GridFlags size_grid;
  size_grid.add(*size);

  // verify
  CLI::App* verify = app.add_subcommand("verify", "exact and simulated coverage at one (n, lambda)");
  BudgetFlags verify_budget;
  verify_budget.add(*verify, true);
  std::int64_t verify_n = 0;
  double verify_lambda = 0.0;
  verify->add_option("--n", verify_n, "sample size")->required();
  verify->add_option("--lambda", verify_lambda, "Poisson mean")->required();
  std::optional<std::uint64_t> mc_trials;
  std::uint64_t seed = 1;
  verify->add_option("--mc-trials", mc_trials, "Monte Carlo trials (omit to skip)");
  verify->add_option("--seed", seed, "Monte Carlo seed")->capture_default_str();

  // scan
  CLI::App* scan = app.add_subcommand("scan", "exact coverage over a lambda grid");
  BudgetFlags scan_budget;
  scan_budget.add(*scan, true);
  std::optional<std::int64_t> scan_n;
  scan->add_option("--n", scan_n, "sample size (default: formula n)");
  GridFlags scan_grid;
  scan_grid.add(*scan);
  std::optional<std::string> out_path;
  scan->add_option("--out", out_path, "CSV output file");

  // bound
  CLI::App* bound = app.add_subcommand("bound", "Chernoff bound on a Poisson tail");
  double theta = 0.0;
  double r = 0.0;
  std::string side = "upper";
  bool with_exact = false;
  bool force = false;
  bound->add_option("--theta", theta, "Poisson mean")->required();
  bound->add_option("--r", r, "threshold")->required();
  bound->add_option("--side", side, "upper (Pr{K >= r}) | lower (Pr{K <= r})")
      ->required()
      ->check(CLI::IsMember({"upper", "lower"}));
  bound->add_flag("--exact", with_exact, "also compute the exact tail probability");
  bound->add_flag("--force", force, "evaluate even when r is on the wrong side of theta");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    const unsigned threads = threads_from_env();
    Envelope env;
    env.inputs["format"] = format;

    if (size->parsed()) {
      env.command = "size";
      size_budget.echo(env.inputs);
      env.inputs["method"] = method;
      PlanResult plan;
      if (method == "normal") {
        if (!size_lambda) throw ParameterError("lambda", "required for --method normal");
        env.inputs["lambda"] = *size_lambda;
        plan = normal_approx_sample_size(*size_lambda, size_budget.eps_a, size_budget.delta);
        env.warnings.push_back(
            "normal approximation is asymptotic and carries no finite-sample guarantee");
      } else {
        if (size_budget.eps_r_opt->count() == 0) {
          throw ParameterError("eps-r", "required unless --method normal");
        }
        const ErrorBudget budget = size_budget.budget();
        if (method == "exact") {
          size_grid.echo(env.inputs);
          if (n_hint) env.inputs["n-hint"] = *n_hint;
          plan = min_sample_size_exact(budget, size_grid.grid(budget), n_hint, threads);
          env.warnings.push_back("exact search is minimal only with respect to the lambda grid");
        } else {
          plan = formula_sample_size(budget);
        }
      }
      require_finite(plan.rhs, "rhs");
      env.results = plan_json(plan);
    } else if (verify->parsed()) {
      env.command = "verify";
      verify_budget.echo(env.inputs);
      env.inputs["n"] = verify_n;
      env.inputs["lambda"] = verify_lambda;
      const ErrorBudget budget = verify_budget.budget();
      const CoveragePoint point = exact_coverage(verify_n, verify_lambda, budget);
      require_finite(point.coverage, "coverage");
      const double target = 1.0 - budget.delta;
      env.results["target"] = target;
      env.results["exact"] = point_json(point, budget.delta);
      env.results["pass"] = point.coverage >= target;
      if (mc_trials) {
        env.inputs["mc-trials"] = *mc_trials;
        env.inputs["seed"] = seed;
        const SimResult sim =
            simulate_coverage({*mc_trials, seed, verify_n, verify_lambda, budget}, threads);
        ordered_json mc;
        mc["trials"] = sim.trials;
        mc["hits"] = sim.hits;
        mc["estimate"] = sim.estimate;
        mc["ci_half_width"] = sim.ci_half_width;
        mc["guard_band_trials"] = sim.guard_band_trials;
        mc["pass"] = sim.estimate + sim.ci_half_width >= target;
        mc["generator"] = std::string(kGeneratorName);
        env.results["monte_carlo"] = mc;
        if (sim.guard_band_trials > 0) {
          env.warnings.push_back(std::to_string(sim.guard_band_trials) +
                                 " trials fell in the rounding guard band and were decided by "
                                 "the integer window rule");
        }
      }
    } else if (scan->parsed()) {
      env.command = "scan";
      scan_budget.echo(env.inputs);
      const ErrorBudget budget = scan_budget.budget();
      const std::int64_t n = scan_n.value_or(formula_sample_size(budget).n);
      if (scan_n) env.inputs["n"] = *scan_n;
      scan_grid.echo(env.inputs);
      if (out_path) env.inputs["out"] = *out_path;
      const CoverageCurve curve = scan_coverage(n, budget, scan_grid.grid(budget), threads);
      std::size_t violations = 0;
      for (const CoveragePoint& p : curve.points) {
        require_finite(p.coverage, "coverage");
        if (p.coverage < 1.0 - budget.delta) ++violations;
      }
      env.results["n"] = n;
      env.results["grid_size"] = curve.points.size();
      env.results["worst"] = point_json(curve.worst(), budget.delta);
      env.results["min_margin"] = curve.min_margin();
      env.results["violations"] = violations;
      env.results["all_pass"] = violations == 0;
      if (out_path) {
        write_csv(*out_path, curve);
        env.results["csv"] = *out_path;
      } else {
        ordered_json rows = ordered_json::array();
        for (const CoveragePoint& p : curve.points) rows.push_back(point_json(p, budget.delta));
        env.results["points"] = rows;
      }
    } else if (bound->parsed()) {
      env.command = "bound";
      env.inputs["theta"] = theta;
      env.inputs["r"] = r;
      env.inputs["side"] = side;
      env.inputs["exact"] = with_exact;
      env.inputs["force"] = force;
      if (!(theta > 0.0) || !std::isfinite(theta)) {
        throw ParameterError("theta", "must be positive and finite");
      }
      if (!(r >= 0.0) || !std::isfinite(r)) throw ParameterError("r", "must be non-negative");
      TailBoundReport report;
      report.side = side == "upper" ? TailSide::upper : TailSide::lower;
      const bool valid = report.side == TailSide::upper ? r > theta : r < theta;
      if (valid) {
        report.bound = report.side == TailSide::upper ? chernoff_upper_tail({theta, r})
                                                      : chernoff_lower_tail({theta, r});
      } else if (force) {
        report.bound = std::exp(chernoff_log_bound({theta, r}));
        env.warnings.push_back(report.side == TailSide::upper
                                   ? "r <= theta: the upper-tail bound requires r > theta; value "
                                     "extrapolated and not a valid bound"
                                   : "r >= theta: the lower-tail bound requires r < theta; value "
                                     "extrapolated and not a valid bound");
      } else {
        throw ParameterError("r", report.side == TailSide::upper
                                      ? "upper-tail bound requires r > theta (use --force to "
                                        "evaluate anyway)"
                                      : "lower-tail bound requires r < theta (use --force to "
                                        "evaluate anyway)");
      }
      require_finite(report.bound, "bound");
      if (with_exact) {
        report.exact = exact_tail({theta}, r,
                                  report.side == TailSide::upper ? TailDirection::geq
                                                                 : TailDirection::leq);
      }
      env.results["side"] = std::string(to_string(report.side));
      env.results["bound"] = report.bound;
      env.results["valid_precondition"] = valid;
      env.results["exact"] = report.exact ? ordered_json(*report.exact) : ordered_json(nullptr);
      if (report.exact) env.results["slack"] = report.bound - *report.exact;
    }
    emit(out, env, format);
    return kOk;
  } catch (const ParameterError& e) {
    const std::string flag = e.field() == "PLAN_THREADS" ? e.field() : "--" + e.field();
    const std::string what = e.what();
    err << "error: " << flag << ": " << what.substr(e.field().size() + 2) << '\n';
    return kUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  }
}

}  // namespace poissonplan::cli
