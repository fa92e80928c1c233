#include "poissonplan/exact.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "poissonplan/bounds.hpp"
#include "poissonplan/errors.hpp"
#include "poissonplan/plan.hpp"

namespace poissonplan {

namespace {

// ln(k!) - ln(sqrt(2 pi k) (k / e)^k) for k = 1..15.
constexpr std::array<double, 16> kStirlingRemainder = {
    0.0,
    8.106146679532725822e-2,
    4.1340695955409294094e-2,
    2.7677925684998339149e-2,
    2.0790672103765093112e-2,
    1.6644691189821192163e-2,
    1.3876128823070747999e-2,
    1.1896709945891770095e-2,
    1.0411265261972096497e-2,
    9.2554621827127329177e-3,
    8.3305634333628712565e-3,
    7.573675487951840795e-3,
    6.9428401072095298657e-3,
    6.4089941880042070684e-3,
    5.9513701127588477356e-3,
    5.554733551962801371e-3,
};

double stirling_remainder(double k) {
  if (k < 16.0) return kStirlingRemainder[static_cast<std::size_t>(k)];
  constexpr double s0 = 1.0 / 12;
  constexpr double s1 = 1.0 / 360;
  constexpr double s2 = 1.0 / 1260;
  constexpr double s3 = 1.0 / 1680;
  constexpr double s4 = 1.0 / 1188;
  const double kk = k * k;
  if (k > 500) return (s0 - s1 / kk) / k;
  if (k > 80) return (s0 - (s1 - s2 / kk) / kk) / k;
  if (k > 35) return (s0 - (s1 - (s2 - s3 / kk) / kk) / kk) / k;
  return (s0 - (s1 - (s2 - (s3 - s4 / kk) / kk) / kk) / kk) / k;
}

// k ln(k / mean) + mean - k, without cancellation when k is near mean.
double deviance(double k, double mean) {
  if (std::fabs(k - mean) < 0.1 * (k + mean)) {
    double v = (k - mean) / (k + mean);
    double sum = (k - mean) * v;
    double ej = 2.0 * k * v;
    v *= v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      const double next = sum + ej / (2 * j + 1);
      if (next == sum) return next;
      sum = next;
    }
    return sum;
  }
  return k * std::log(k / mean) + mean - k;
}

void require_theta(PoissonDist dist) {
  if (!(dist.theta > 0.0) || !std::isfinite(dist.theta)) {
    throw DomainError("Poisson mean theta must be positive and finite");
  }
}

// Bisection for the crossing of the monotone log-bound with `target` on
// [lo, hi]; returns a point where the bound is <= target.
template <class Fn>
double bisect_bound(Fn log_bound, double lo, double hi, double target, bool increasing) {
  for (int i = 0; i < 200 && hi - lo > 0.25; ++i) {
    const double mid = 0.5 * (lo + hi);
    const bool below = log_bound(mid) <= target;
    if (below == increasing) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return increasing ? lo : hi;
}

constexpr std::int64_t kMaxSummedTerms = 200'000'000;

}  // namespace

SupportRange certified_support(PoissonDist dist, double tolerance) {
  require_theta(dist);
  const double theta = dist.theta;
  const double target = std::log(tolerance);
  auto log_bound = [theta](double r) { return chernoff_log_bound({theta, r}); };

  SupportRange range;
  // Upper: smallest integer u > theta with Pr{K >= u} <= tolerance.
  double step = std::max(1.0, std::sqrt(theta));
  double far = theta + step;
  while (log_bound(far) > target) {
    step *= 2.0;
    far = theta + step;
  }
  const double upper = bisect_bound(log_bound, theta, far, target, false);
  range.hi = static_cast<std::int64_t>(std::ceil(upper)) - 1;

  // Lower: largest integer l < theta with Pr{K <= l} <= tolerance.
  if (-theta > target) {
    range.lo = 0;
  } else {
    const double lower = bisect_bound(log_bound, 0.0, theta, target, true);
    range.lo = static_cast<std::int64_t>(std::floor(lower)) + 1;
  }
  range.lo = std::min(range.lo, static_cast<std::int64_t>(std::floor(theta)));
  range.hi = std::max(range.hi, static_cast<std::int64_t>(std::floor(theta)));
  return range;
}

double poisson_log_pmf(PoissonDist dist, std::int64_t k) {
  require_theta(dist);
  if (k < 0) throw DomainError("poisson_pmf: k must be non-negative, got " + std::to_string(k));
  if (k == 0) return -dist.theta;
  const auto kd = static_cast<double>(k);
  return -stirling_remainder(kd) - deviance(kd, dist.theta) -
         0.5 * std::log(2.0 * std::numbers::pi * kd);
}

double poisson_pmf(PoissonDist dist, std::int64_t k) {
  return std::exp(poisson_log_pmf(dist, k));
}

double poisson_mass(PoissonDist dist, std::int64_t lo, std::int64_t hi) {
  require_theta(dist);
  const SupportRange support = certified_support(dist);
  lo = std::max({lo, support.lo, std::int64_t{0}});
  hi = std::min(hi, support.hi);
  if (lo > hi) return 0.0;
  if (hi - lo > kMaxSummedTerms) {
    throw ResourceError("poisson_mass: summation range too large");
  }
  // Neumaier compensated summation.
  double sum = 0.0;
  double carry = 0.0;
  for (std::int64_t k = lo; k <= hi; ++k) {
    const double term = poisson_pmf(dist, k);
    const double t = sum + term;
    if (std::fabs(sum) >= std::fabs(term)) {
      carry += (sum - t) + term;
    } else {
      carry += (term - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

double poisson_cdf(PoissonDist dist, std::int64_t k) {
  require_theta(dist);
  if (k < 0) return 0.0;
  if (static_cast<double>(k) < std::floor(dist.theta)) return poisson_mass(dist, 0, k);
  return 1.0 - poisson_mass(dist, k + 1);
}

double exact_tail(PoissonDist dist, double r, TailDirection direction) {
  require_theta(dist);
  if (direction == TailDirection::geq) {
    const double first = std::ceil(r);
    if (first <= 0.0) return 1.0;
    const auto k0 = static_cast<std::int64_t>(first);
    if (first > dist.theta) return poisson_mass(dist, k0);
    return 1.0 - poisson_cdf(dist, k0 - 1);
  }
  const double last = std::floor(r);
  if (last < 0.0) return 0.0;
  return poisson_cdf(dist, static_cast<std::int64_t>(last));
}

CoverageWindow coverage_window(std::int64_t n, double lambda, const ErrorBudget& budget) {
  budget.validate();
  if (n < 1) throw ParameterError("n", "sample size must be >= 1");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ParameterError("lambda", "Poisson mean must be positive and finite");
  }
  const double w = budget.half_width(lambda);
  const auto count = static_cast<double>(n);
  // Open interval (n (lambda - w), n (lambda + w)): integral endpoints excluded.
  const double left = count * (lambda - w);
  const double right = count * (lambda + w);
  CoverageWindow window;
  window.k_min = left < 0.0 ? 0 : static_cast<std::int64_t>(std::floor(left)) + 1;
  window.k_max = static_cast<std::int64_t>(std::ceil(right)) - 1;
  return window;
}

CoveragePoint exact_coverage(std::int64_t n, double lambda, const ErrorBudget& budget) {
  const CoverageWindow window = coverage_window(n, lambda, budget);
  CoveragePoint point;
  point.lambda = lambda;
  point.n = n;
  point.k_min = window.k_min;
  point.k_max = window.k_max;
  point.label = case_of(lambda, budget);
  if (window.k_min <= window.k_max) {
    PoissonDist dist{static_cast<double>(n) * lambda};
    point.coverage = std::clamp(poisson_mass(dist, window.k_min, window.k_max), 0.0, 1.0);
  }
  return point;
}

}  // namespace poissonplan
