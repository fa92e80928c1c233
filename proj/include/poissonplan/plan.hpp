#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "poissonplan/budget.hpp"
#include "poissonplan/exact.hpp"

namespace poissonplan {

enum class PlanMethod { formula, exact_search, normal_approx };

std::string_view to_string(PlanMethod method);

struct PlanResult {
  std::int64_t n = 1;
  /// Right-hand side the integer n was derived from: the closed-form bound
  /// for formula and exact_search, z^2 lambda / eps_a^2 for normal_approx.
  double rhs = 0.0;
  /// g(eps_a, eps_a / eps_r); absent for the normal baseline, which has no
  /// relative tolerance.
  std::optional<double> critical_exponent;
  PlanMethod method = PlanMethod::formula;
};

/// Smallest integer n with
///   n > (eps_r / eps_a) ln(2 / delta) / ((1 + eps_r) ln(1 + eps_r) - eps_r).
/// An rhs within 1e-9 (relative) of an integer m is treated as m, giving m + 1.
PlanResult formula_sample_size(const ErrorBudget& budget);

/// g(eps_a, eps_a / eps_r) = -(eps_a / eps_r) ((1 + eps_r) ln(1 + eps_r) - eps_r).
double critical_exponent(const ErrorBudget& budget);

/// exp(n * critical_exponent) < delta / 2, compared in log space.
bool is_sufficient(std::int64_t n, const ErrorBudget& budget);

CaseLabel case_of(double lambda, const ErrorBudget& budget);

/// Sorted, duplicate-free set of lambda values at which coverage is evaluated.
struct LambdaGrid {
  std::vector<double> points;

  /// `count` log-spaced points on [lambda_min, lambda_max] together with the
  /// case boundaries eps_a and eps_a / eps_r and their (1 +- 1e-6) neighbours,
  /// keeping only boundary points inside the range.
  static LambdaGrid scan(const ErrorBudget& budget, double lambda_min, double lambda_max,
                         std::size_t count);

  /// scan(budget, eps_a / 100, 100 eps_a / eps_r, 200).
  static LambdaGrid default_for(const ErrorBudget& budget);

  /// Throws ParameterError("grid", ...) if empty or any point is not positive.
  void validate() const;
};

/// Relative offset of the perturbed boundary points.
inline constexpr double kBoundaryPerturbation = 1e-6;
inline constexpr std::size_t kDefaultGridPoints = 200;

/// Exact coverage at every grid point, with the worst (minimum-margin) point.
struct CoverageCurve {
  std::int64_t n = 0;
  ErrorBudget budget;
  std::vector<CoveragePoint> points;
  std::size_t worst_index = 0;

  const CoveragePoint& worst() const { return points.at(worst_index); }
  double min_margin() const { return worst().coverage - (1.0 - budget.delta); }
  /// Every point has coverage >= 1 - delta.
  bool satisfied() const;
};

/// `threads` = 0 uses the hardware concurrency. The result does not depend on
/// the thread count.
CoverageCurve scan_coverage(std::int64_t n, const ErrorBudget& budget, const LambdaGrid& grid,
                            unsigned threads = 0);

/// True iff exact coverage >= 1 - delta at every grid point.
bool meets_budget_on_grid(std::int64_t n, const ErrorBudget& budget, const LambdaGrid& grid,
                          unsigned threads = 0);

/// Largest search value before giving up with ResourceError.
inline constexpr std::int64_t kMaxExactSearchN = 100'000'000;

/// Smallest n reached from `n_hint` (default: the formula n) such that
/// meets_budget_on_grid(n) holds and meets_budget_on_grid(n - 1) fails (or
/// n = 1). Searches downward when the hint passes and upward otherwise, with
/// doubling steps followed by bisection. Exact only with respect to the grid.
PlanResult min_sample_size_exact(const ErrorBudget& budget, const LambdaGrid& grid,
                                 std::optional<std::int64_t> n_hint = std::nullopt,
                                 unsigned threads = 0);

/// Standard normal quantile. Rational initial approximation refined by one
/// Halley step on erfc; absolute error well below 1e-8 on (0, 1).
double normal_quantile(double p);

/// ceil(z^2 lambda / eps_a^2) with z the (1 - delta / 2) normal quantile.
/// Not a rigorous guarantee; provided for comparison.
PlanResult normal_approx_sample_size(double lambda_assumed, double epsilon_a, double delta);

}  // namespace poissonplan
