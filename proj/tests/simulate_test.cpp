#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <map>
#include <vector>

#include "poissonplan/errors.hpp"
#include "poissonplan/exact.hpp"
#include "poissonplan/simulate.hpp"

using namespace poissonplan;

namespace {

std::vector<std::int64_t> draws(double theta, std::size_t count, std::uint64_t seed) {
  RandomStream stream(seed);
  std::vector<std::int64_t> out(count);
  for (auto& k : out) k = poisson_sampler(theta, stream);
  return out;
}

// Pearson statistic over bins with expected count >= 5; the tail beyond the
// last such bin is pooled. Returns {statistic, degrees of freedom}.
std::pair<double, int> chi_square(const std::vector<std::int64_t>& sample, double theta) {
  std::map<std::int64_t, double> observed;
  for (auto k : sample) observed[k] += 1;
  const double total = static_cast<double>(sample.size());
  double stat = 0.0;
  int bins = 0;
  double pooled_expected = 0.0;
  double pooled_observed = 0.0;
  const auto top = static_cast<std::int64_t>(theta + 20 * std::sqrt(theta) + 20);
  for (std::int64_t k = 0; k <= top; ++k) {
    const double expected = total * poisson_pmf({theta}, k);
    const double obs = observed.count(k) ? observed[k] : 0.0;
    pooled_expected += expected;
    pooled_observed += obs;
    if (pooled_expected >= 5.0) {
      stat += (pooled_observed - pooled_expected) * (pooled_observed - pooled_expected) /
              pooled_expected;
      ++bins;
      pooled_expected = 0.0;
      pooled_observed = 0.0;
    }
  }
  double beyond = 0.0;
  for (const auto& [k, c] : observed) {
    if (k > top) beyond += c;
  }
  pooled_observed += beyond;
  pooled_expected += total * (1.0 - poisson_cdf({theta}, top));
  if (pooled_expected > 0.0) {
    stat += (pooled_observed - pooled_expected) * (pooled_observed - pooled_expected) /
            pooled_expected;
    ++bins;
  }
  return {stat, bins - 1};
}

}  // namespace

TEST_CASE("uniform stream stays in [0, 1)") {
  RandomStream stream(3);
  for (int i = 0; i < 100000; ++i) {
    const double u = stream.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("sampler at a vanishing mean is almost always zero") {
  const auto sample = draws(1e-9, 1'000'000, 17);
  std::size_t nonzero = 0;
  for (auto k : sample) nonzero += k != 0;
  // Expected 1e-3 nonzeros; P(>= 5) is ~1e-17.
  CHECK(nonzero <= 4);
}

TEST_CASE("sampler moments") {
  for (double theta : {5.0, 29.5, 30.5, 1000.0}) {
    const auto sample = draws(theta, 1'000'000, 2024);
    double mean = 0.0;
    for (auto k : sample) mean += static_cast<double>(k);
    mean /= static_cast<double>(sample.size());
    double var = 0.0;
    for (auto k : sample) var += (k - mean) * (k - mean);
    var /= static_cast<double>(sample.size() - 1);
    CHECK(std::fabs(mean - theta) <= 3 * std::sqrt(theta / 1e6));
    CHECK(std::fabs(var - theta) <= 0.05 * theta);
  }
}

TEST_CASE("sampler passes chi-square goodness of fit") {
  for (double theta : {0.5, 5.0, 50.0}) {
    const auto sample = draws(theta, 1'000'000, 777);
    const auto [stat, dof] = chi_square(sample, theta);
    const boost::math::chi_squared dist(dof);
    const double critical = boost::math::quantile(boost::math::complement(dist, 1e-6));
    INFO("theta=" << theta << " stat=" << stat << " dof=" << dof << " critical=" << critical);
    CHECK(stat < critical);
  }
}

TEST_CASE("huge absolute tolerance always hits") {
  const SimConfig cfg{10'000, 5, 1, 0.3, ErrorBudget::make(1e6, 0.5, 0.05)};
  const SimResult result = simulate_coverage(cfg);
  CHECK(result.hits == result.trials);
  CHECK(result.estimate == 1.0);
  CHECK(result.ci_half_width == 0.0);
}

TEST_CASE("single-term window matches the exact oracle") {
  const ErrorBudget budget = ErrorBudget::make(1.0, 0.5, 0.05);
  const SimResult result = simulate_coverage({1'000'000, 42, 1, 1.0, budget});
  const double p = exact_coverage(1, 1.0, budget).coverage;
  CHECK(std::fabs(result.estimate - p) <= 3 * std::sqrt(p * (1 - p) / 1e6) + 1e-6);
  // K = 0 and K = 2 sit exactly on the excluded window edges.
  CHECK(result.guard_band_trials > 0);
}

TEST_CASE("simulation is reproducible and thread-count independent") {
  const SimConfig cfg{300'000, 9, 37, 0.8, ErrorBudget::make(0.1, 0.2, 0.05)};
  const SimResult a = simulate_coverage(cfg, 1);
  const SimResult b = simulate_coverage(cfg, 1);
  const SimResult c = simulate_coverage(cfg, 5);
  CHECK(a.hits == b.hits);
  CHECK(a.hits == c.hits);
  CHECK(a.estimate == c.estimate);
  SimConfig other = cfg;
  other.seed = 10;
  CHECK(simulate_coverage(other).hits != a.hits);
}

TEST_CASE("simulation validation and resource cap") {
  const ErrorBudget budget = ErrorBudget::make(0.1, 0.1, 0.05);
  CHECK_THROWS_AS(simulate_coverage({0, 1, 10, 1.0, budget}), ParameterError);
  CHECK_THROWS_AS(simulate_coverage({10, 1, 0, 1.0, budget}), ParameterError);
  CHECK_THROWS_AS(simulate_coverage({10, 1, 10, -1.0, budget}), ParameterError);
  CHECK_THROWS_AS(simulate_coverage({1001, 1, 10, 1.0, budget}, 1, 1000), ResourceError);
  RandomStream stream(1);
  CHECK_THROWS_AS(poisson_sampler(0.0, stream), DomainError);
}
