#include "poissonplan/plan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>

#include "poissonplan/bounds.hpp"
#include "poissonplan/errors.hpp"
#include "poissonplan/parallel.hpp"

namespace poissonplan {

namespace {

constexpr double kIntegerSnap = 1e-9;

void require_n(std::int64_t n) {
  if (n < 1) throw ParameterError("n", "sample size must be >= 1");
}

double formula_rhs(const ErrorBudget& budget) {
  return (budget.epsilon_r / budget.epsilon_a) * std::log(2.0 / budget.delta) /
         entropy_gap(budget.epsilon_r);
}

}  // namespace

std::string_view to_string(PlanMethod method) {
  switch (method) {
    case PlanMethod::formula: return "formula";
    case PlanMethod::exact_search: return "exact_search";
    case PlanMethod::normal_approx: return "normal_approx";
  }
  return "?";
}

double critical_exponent(const ErrorBudget& budget) {
  budget.validate();
  return -(budget.epsilon_a / budget.epsilon_r) * entropy_gap(budget.epsilon_r);
}

PlanResult formula_sample_size(const ErrorBudget& budget) {
  budget.validate();
  PlanResult result;
  result.method = PlanMethod::formula;
  result.rhs = formula_rhs(budget);
  result.critical_exponent = critical_exponent(budget);
  if (!std::isfinite(result.rhs) || result.rhs > 9e18) {
    throw DomainError("formula right-hand side is not representable as a sample size");
  }
  const double nearest = std::round(result.rhs);
  double base = std::floor(result.rhs);
  if (std::fabs(result.rhs - nearest) <= kIntegerSnap * std::max(1.0, std::fabs(result.rhs))) {
    base = nearest;
  }
  result.n = std::max<std::int64_t>(1, static_cast<std::int64_t>(base) + 1);
  return result;
}

bool is_sufficient(std::int64_t n, const ErrorBudget& budget) {
  require_n(n);
  return static_cast<double>(n) * critical_exponent(budget) < std::log(budget.delta / 2.0);
}

CaseLabel case_of(double lambda, const ErrorBudget& budget) {
  budget.validate();
  if (!(lambda > 0.0)) throw ParameterError("lambda", "Poisson mean must be positive");
  if (lambda < budget.epsilon_a) return CaseLabel::I;
  if (lambda == budget.epsilon_a) return CaseLabel::II;
  if (lambda <= budget.crossover()) return CaseLabel::III;
  return CaseLabel::IV;
}

LambdaGrid LambdaGrid::scan(const ErrorBudget& budget, double lambda_min, double lambda_max,
                            std::size_t count) {
  budget.validate();
  if (!(lambda_min > 0.0) || !std::isfinite(lambda_min)) {
    throw ParameterError("lambda-min", "must be positive and finite");
  }
  if (!(lambda_max >= lambda_min) || !std::isfinite(lambda_max)) {
    throw ParameterError("lambda-max", "must be finite and >= lambda-min");
  }
  if (count == 0) throw ParameterError("grid-points", "must be >= 1");

  LambdaGrid grid;
  grid.points.reserve(count + 6);
  if (count == 1) {
    grid.points.push_back(lambda_min);
  } else {
    const double log_min = std::log(lambda_min);
    const double log_span = std::log(lambda_max) - log_min;
    for (std::size_t i = 0; i < count; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(count - 1);
      grid.points.push_back(std::exp(log_min + t * log_span));
    }
    grid.points.front() = lambda_min;
    grid.points.back() = lambda_max;
  }
  for (const double boundary : {budget.epsilon_a, budget.crossover()}) {
    for (const double candidate : {boundary * (1.0 - kBoundaryPerturbation), boundary,
                                   boundary * (1.0 + kBoundaryPerturbation)}) {
      if (candidate >= lambda_min && candidate <= lambda_max) grid.points.push_back(candidate);
    }
  }
  std::sort(grid.points.begin(), grid.points.end());
  grid.points.erase(std::unique(grid.points.begin(), grid.points.end()), grid.points.end());
  return grid;
}

LambdaGrid LambdaGrid::default_for(const ErrorBudget& budget) {
  budget.validate();
  return scan(budget, budget.epsilon_a / 100.0, 100.0 * budget.crossover(), kDefaultGridPoints);
}

void LambdaGrid::validate() const {
  if (points.empty()) throw ParameterError("grid", "lambda grid is empty");
  for (const double lambda : points) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
      throw ParameterError("grid", "lambda grid contains a non-positive or non-finite value");
    }
  }
}

bool CoverageCurve::satisfied() const {
  return std::all_of(points.begin(), points.end(), [this](const CoveragePoint& p) {
    return p.coverage >= 1.0 - budget.delta;
  });
}

CoverageCurve scan_coverage(std::int64_t n, const ErrorBudget& budget, const LambdaGrid& grid,
                            unsigned threads) {
  budget.validate();
  grid.validate();
  require_n(n);
  CoverageCurve curve;
  curve.n = n;
  curve.budget = budget;
  curve.points.resize(grid.points.size());
  parallel_for(grid.points.size(), threads, [&](std::size_t i) {
    curve.points[i] = exact_coverage(n, grid.points[i], budget);
  });
  // First minimum in grid order, so ties resolve identically for any thread count.
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    if (curve.points[i].coverage < curve.points[curve.worst_index].coverage) {
      curve.worst_index = i;
    }
  }
  return curve;
}

bool meets_budget_on_grid(std::int64_t n, const ErrorBudget& budget, const LambdaGrid& grid,
                          unsigned threads) {
  budget.validate();
  grid.validate();
  require_n(n);
  const double target = 1.0 - budget.delta;
  std::atomic<bool> failed{false};
  parallel_for(grid.points.size(), threads, [&](std::size_t i) {
    if (failed.load(std::memory_order_relaxed)) return;
    if (exact_coverage(n, grid.points[i], budget).coverage < target) {
      failed.store(true, std::memory_order_relaxed);
    }
  });
  return !failed.load();
}

PlanResult min_sample_size_exact(const ErrorBudget& budget, const LambdaGrid& grid,
                                 std::optional<std::int64_t> n_hint, unsigned threads) {
  budget.validate();
  grid.validate();
  const PlanResult formula = formula_sample_size(budget);
  const std::int64_t hint = n_hint.value_or(formula.n);
  if (hint < 1) throw ParameterError("n-hint", "must be >= 1");
  if (hint > kMaxExactSearchN) throw ResourceError("exact search hint exceeds the search cap");

  auto passes = [&](std::int64_t n) { return meets_budget_on_grid(n, budget, grid, threads); };

  // Invariant during bisection: passes(high) and !passes(low).
  std::int64_t high = 0;
  std::int64_t low = 0;
  if (passes(hint)) {
    high = hint;
    std::int64_t step = 1;
    for (;;) {
      if (high == 1) {
        low = 0;
        break;
      }
      const std::int64_t candidate = std::max<std::int64_t>(1, high - step);
      if (passes(candidate)) {
        high = candidate;
        step *= 2;
      } else {
        low = candidate;
        break;
      }
    }
  } else {
    low = hint;
    std::int64_t step = 1;
    for (;;) {
      const std::int64_t candidate = low + step;
      if (candidate > kMaxExactSearchN) {
        throw ResourceError("exact search exceeded the sample-size cap without meeting the budget");
      }
      if (passes(candidate)) {
        high = candidate;
        break;
      }
      low = candidate;
      step *= 2;
    }
  }
  while (high - low > 1) {
    const std::int64_t mid = low + (high - low) / 2;
    if (passes(mid)) {
      high = mid;
    } else {
      low = mid;
    }
  }

  PlanResult result;
  result.method = PlanMethod::exact_search;
  result.n = high;
  result.rhs = formula.rhs;
  result.critical_exponent = formula.critical_exponent;
  return result;
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("normal_quantile requires p in (0, 1)");
  // Acklam's rational approximation (relative error ~1.15e-9).
  constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                          -2.759285104469687e+02, 1.383577518672690e+02,
                          -3.066479806614716e+01, 2.506628277459239e+00};
  constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                          -1.556989798598866e+02, 6.680131188771972e+01,
                          -1.328068155288572e+01};
  constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                          -2.400758277161838e+00, -2.549732539343734e+00,
                          4.374664141464968e+00,  2.938163982698783e+00};
  constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                          2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x = 0.0;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  // Halley refinement against the exact cdf.
  const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

PlanResult normal_approx_sample_size(double lambda_assumed, double epsilon_a, double delta) {
  if (!(lambda_assumed > 0.0) || !std::isfinite(lambda_assumed)) {
    throw ParameterError("lambda", "assumed Poisson mean must be positive and finite");
  }
  if (!(epsilon_a > 0.0) || !std::isfinite(epsilon_a)) {
    throw ParameterError("eps-a", "absolute tolerance must be positive and finite");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ParameterError("delta", "confidence budget must lie in (0, 1)");
  }
  const double z = normal_quantile(1.0 - delta / 2.0);
  PlanResult result;
  result.method = PlanMethod::normal_approx;
  result.rhs = z * z * lambda_assumed / (epsilon_a * epsilon_a);
  if (!std::isfinite(result.rhs) || result.rhs > 9e18) {
    throw DomainError("normal approximation sample size is not representable");
  }
  result.n = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(result.rhs)));
  return result;
}

}  // namespace poissonplan
