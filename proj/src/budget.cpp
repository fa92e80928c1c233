#include "poissonplan/budget.hpp"

#include <algorithm>
#include <cmath>

#include "poissonplan/errors.hpp"

namespace poissonplan {

ErrorBudget ErrorBudget::make(double epsilon_a, double epsilon_r, double delta) {
  ErrorBudget budget{epsilon_a, epsilon_r, delta};
  budget.validate();
  return budget;
}

void ErrorBudget::validate() const {
  if (!(epsilon_a > 0.0) || !std::isfinite(epsilon_a)) {
    throw ParameterError("eps-a", "absolute tolerance must be positive and finite");
  }
  if (!(epsilon_r > 0.0 && epsilon_r < 1.0)) {
    throw ParameterError("eps-r", "relative tolerance must lie in (0, 1)");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ParameterError("delta", "confidence budget must lie in (0, 1)");
  }
}

double ErrorBudget::half_width(double lambda) const {
  return std::max(epsilon_a, epsilon_r * lambda);
}

std::string_view to_string(CaseLabel label) {
  switch (label) {
    case CaseLabel::I: return "I";
    case CaseLabel::II: return "II";
    case CaseLabel::III: return "III";
    case CaseLabel::IV: return "IV";
  }
  return "?";
}

}  // namespace poissonplan
