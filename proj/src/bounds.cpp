#include "poissonplan/bounds.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "poissonplan/errors.hpp"

namespace poissonplan {

namespace {

// Below this |u| the series for entropy_gap is used.
constexpr double kSeriesCutoff = 0.1;

void require_positive_n(long long n) {
  if (n < 1) throw DomainError("sample size n must be >= 1, got " + std::to_string(n));
}

void require_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("lambda must be positive and finite");
  }
}

}  // namespace

std::string_view to_string(TailSide side) {
  return side == TailSide::upper ? "upper" : "lower";
}

double entropy_gap(double u) {
  if (!(u >= -1.0)) throw DomainError("entropy_gap: argument must be >= -1");
  if (u == -1.0) return 1.0;
  if (std::fabs(u) < kSeriesCutoff) {
    // sum_{k>=2} (-u)^k / (k (k - 1)), alternating for u > 0
    double sum = 0.0;
    double power = u * u;
    for (int k = 2; k < 64; ++k) {
      const double term = power / (static_cast<double>(k) * (k - 1));
      const double signed_term = (k % 2 == 0) ? term : -term;
      sum += signed_term;
      if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
      power *= u;
    }
    return sum;
  }
  return (1.0 + u) * std::log1p(u) - u;
}

double g_exponent(GArgs args) {
  require_lambda(args.lambda);
  if (!(args.lambda + args.epsilon > 0.0)) {
    throw DomainError("g_exponent: lambda + epsilon must be positive");
  }
  return -args.lambda * entropy_gap(args.epsilon / args.lambda);
}

double chernoff_log_bound(TailQuery q) {
  if (!(q.theta > 0.0) || !std::isfinite(q.theta)) {
    throw DomainError("chernoff bound: theta must be positive and finite");
  }
  if (!(q.r >= 0.0)) throw DomainError("chernoff bound: r must be non-negative");
  if (q.r == 0.0) return -q.theta;
  return -q.theta * entropy_gap((q.r - q.theta) / q.theta);
}

double chernoff_upper_tail(TailQuery q) {
  if (!(q.r > q.theta)) {
    throw DomainError("chernoff_upper_tail requires r > theta");
  }
  // The true bound is < 1 for r > theta; rounding near r = theta would give 1.
  constexpr double kBelowOne = 1.0 - std::numeric_limits<double>::epsilon() / 2;
  return std::fmin(std::exp(chernoff_log_bound(q)), kBelowOne);
}

double chernoff_lower_tail(TailQuery q) {
  if (!(q.r < q.theta)) {
    throw DomainError("chernoff_lower_tail requires r < theta");
  }
  return std::exp(chernoff_log_bound(q));
}

double tail_bound_abs(long long n, double lambda, double epsilon, TailSide side) {
  require_positive_n(n);
  require_lambda(lambda);
  if (!(epsilon > 0.0)) throw DomainError("tail_bound_abs requires epsilon > 0");
  const auto count = static_cast<double>(n);
  if (side == TailSide::lower) {
    if (!(lambda > epsilon)) {
      throw DomainError("tail_bound_abs(lower) requires lambda > epsilon");
    }
    return std::exp(count * g_exponent({-epsilon, lambda}));
  }
  return std::exp(count * g_exponent({epsilon, lambda}));
}

double tail_bound_rel(long long n, double lambda, double epsilon, TailSide side) {
  require_positive_n(n);
  require_lambda(lambda);
  if (!(epsilon > 0.0)) throw DomainError("tail_bound_rel requires epsilon > 0");
  const auto count = static_cast<double>(n);
  if (side == TailSide::lower) {
    if (!(epsilon < 1.0)) throw DomainError("tail_bound_rel(lower) requires epsilon < 1");
    return std::exp(-count * lambda * entropy_gap(-epsilon));
  }
  return std::exp(-count * lambda * entropy_gap(epsilon));
}

}  // namespace poissonplan
