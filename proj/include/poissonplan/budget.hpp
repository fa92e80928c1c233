#pragma once

#include <string_view>

namespace poissonplan {

/// The estimation guarantee: |estimate - lambda| < eps_a or < eps_r * lambda
/// with probability greater than 1 - delta.
struct ErrorBudget {
  double epsilon_a = 0.0;  // absolute tolerance, > 0
  double epsilon_r = 0.0;  // relative tolerance, in (0, 1)
  double delta = 0.0;      // failure probability, in (0, 1)

  /// Validating constructor; throws ParameterError naming the bad field.
  static ErrorBudget make(double epsilon_a, double epsilon_r, double delta);

  /// Throws ParameterError ("eps-a", "eps-r" or "delta") if invalid.
  void validate() const;

  /// Half-width of the acceptance window at `lambda`: max(eps_a, eps_r * lambda).
  double half_width(double lambda) const;

  /// lambda = eps_a / eps_r, where the absolute and relative criteria meet.
  double crossover() const { return epsilon_a / epsilon_r; }

  friend bool operator==(const ErrorBudget&, const ErrorBudget&) = default;
};

/// Which interval of the lambda axis a configuration lies in:
///   I:   lambda < eps_a
///   II:  lambda == eps_a
///   III: eps_a < lambda <= eps_a / eps_r
///   IV:  lambda > eps_a / eps_r
enum class CaseLabel { I, II, III, IV };

std::string_view to_string(CaseLabel label);

}  // namespace poissonplan
