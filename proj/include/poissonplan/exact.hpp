#pragma once

#include <cstdint>
#include <limits>

#include "poissonplan/budget.hpp"

// Exact Poisson probabilities and the exact coverage of the mixed
// absolute/relative error event. This is the ground truth the bounds and the
// sample-size formula are checked against.

namespace poissonplan {

/// K ~ Poisson(theta). For the sample mean of n draws at lambda, theta = n * lambda.
struct PoissonDist {
  double theta = 0.0;
};

enum class TailDirection { geq, leq };

/// Integer range [lo, hi] outside of which each tail of Poisson(theta) holds
/// at most `tolerance` mass, certified by the Chernoff bound.
struct SupportRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

SupportRange certified_support(PoissonDist dist, double tolerance = 1e-20);

/// Pr{K = k}. Evaluated with the saddle-point form (Stirling remainder plus a
/// stable deviance term), accurate to ~1e-14 relative well past theta = 1e6.
double poisson_pmf(PoissonDist dist, std::int64_t k);

/// ln Pr{K = k}.
double poisson_log_pmf(PoissonDist dist, std::int64_t k);

/// Pr{lo <= K <= hi} by compensated summation over the certified support.
/// Empty ranges give 0.
double poisson_mass(PoissonDist dist, std::int64_t lo,
                    std::int64_t hi = std::numeric_limits<std::int64_t>::max());

/// Pr{K <= k}; 0 for k < 0. Sums whichever side of the mode is lighter.
double poisson_cdf(PoissonDist dist, std::int64_t k);

/// Pr{K >= r} (geq) or Pr{K <= r} (leq) for real r.
double exact_tail(PoissonDist dist, double r, TailDirection direction);

/// Integer realizations of K satisfying |K/n - lambda| < max(eps_a, eps_r lambda).
/// k_min > k_max means the window is empty.
struct CoverageWindow {
  std::int64_t k_min = 0;
  std::int64_t k_max = -1;
};

CoverageWindow coverage_window(std::int64_t n, double lambda, const ErrorBudget& budget);

struct CoveragePoint {
  double lambda = 0.0;
  std::int64_t n = 0;
  double coverage = 0.0;
  std::int64_t k_min = 0;
  std::int64_t k_max = -1;
  CaseLabel label = CaseLabel::I;
};

/// Exact Pr{|mean - lambda| < eps_a or |mean - lambda| < eps_r lambda} for the
/// mean of n i.i.d. Poisson(lambda) samples.
CoveragePoint exact_coverage(std::int64_t n, double lambda, const ErrorBudget& budget);

}  // namespace poissonplan
