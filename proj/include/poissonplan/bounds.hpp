#pragma once

#include <optional>
#include <string_view>

// Chernoff-type bounds for Poisson tails and for deviations of the empirical
// mean of n i.i.d. Poisson(lambda) samples. Every bound is assembled in log
// space; nothing here overflows for n * lambda up to the double range.

namespace poissonplan {

/// Arguments of the exponent function g(epsilon, lambda).
struct GArgs {
  double epsilon = 0.0;  // signed deviation, same units as lambda
  double lambda = 0.0;   // Poisson mean, > 0; lambda + epsilon must be > 0
};

/// Tail query on K ~ Poisson(theta): Pr{K >= r} or Pr{K <= r}.
struct TailQuery {
  double theta = 0.0;  // > 0
  double r = 0.0;      // >= 0
};

enum class TailSide { lower, upper };

std::string_view to_string(TailSide side);

struct TailBoundReport {
  double bound = 1.0;
  std::optional<double> exact;
  TailSide side = TailSide::upper;
};

/// (1 + u) ln(1 + u) - u for u > -1 (u = -1 gives 1). Non-negative, zero
/// only at u = 0. Uses a power series near zero where the direct form
/// cancels.
double entropy_gap(double u);

/// g(eps, lambda) = eps + (lambda + eps) ln(lambda / (lambda + eps))
///               = -lambda * entropy_gap(eps / lambda).
/// Always <= 0. Throws DomainError unless lambda > 0 and lambda + eps > 0.
double g_exponent(GArgs args);

/// Natural log of the Poisson Chernoff bound e^-theta (theta e / r)^r, i.e.
/// -theta + r - r ln(r / theta). r = 0 gives -theta.
double chernoff_log_bound(TailQuery q);

/// Bound on Pr{K >= r}; requires r > theta. The result is kept strictly
/// below 1.
double chernoff_upper_tail(TailQuery q);

/// Bound on Pr{K <= r}; requires 0 <= r < theta. r = 0 returns e^-theta,
/// which is also the exact value of Pr{K = 0}.
double chernoff_lower_tail(TailQuery q);

/// exp(n g(-eps, lambda)) bounding Pr{mean <= lambda - eps} (lower, needs
/// lambda > eps > 0) or exp(n g(eps, lambda)) bounding Pr{mean >= lambda + eps}
/// (upper, needs eps > 0).
double tail_bound_abs(long long n, double lambda, double epsilon, TailSide side);

/// exp(n lambda (-eps - (1 - eps) ln(1 - eps))) bounding
/// Pr{mean <= lambda (1 - eps)} (lower, 0 < eps < 1) or
/// exp(n lambda (eps - (1 + eps) ln(1 + eps))) bounding
/// Pr{mean >= lambda (1 + eps)} (upper, eps > 0).
double tail_bound_rel(long long n, double lambda, double epsilon, TailSide side);

}  // namespace poissonplan
