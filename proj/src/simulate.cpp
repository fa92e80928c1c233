#include "poissonplan/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "poissonplan/errors.hpp"
#include "poissonplan/exact.hpp"
#include "poissonplan/parallel.hpp"

namespace poissonplan {

namespace {

std::int64_t sample_by_inversion(double theta, RandomStream& stream) {
  const double u = stream.uniform();
  double term = std::exp(-theta);
  double cumulative = term;
  std::int64_t k = 0;
  while (u >= cumulative) {
    ++k;
    term *= theta / static_cast<double>(k);
    cumulative += term;
    // Rounding can leave the cumulative sum just short of 1.
    if (term < std::numeric_limits<double>::min() && static_cast<double>(k) > theta) break;
  }
  return k;
}

std::int64_t sample_by_ptrs(double theta, RandomStream& stream) {
  const double sqrt_theta = std::sqrt(theta);
  const double log_theta = std::log(theta);
  const double b = 0.931 + 2.53 * sqrt_theta;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = stream.uniform() - 0.5;
    const double v = stream.uniform();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + theta + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    const double log_accept = std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b);
    if (log_accept <= -theta + k * log_theta - std::lgamma(k + 1.0)) {
      return static_cast<std::int64_t>(k);
    }
  }
}

void validate(const SimConfig& cfg, std::uint64_t trial_cap) {
  cfg.budget.validate();
  if (cfg.trials < 1) throw ParameterError("mc-trials", "must be >= 1");
  if (cfg.trials > trial_cap) {
    throw ResourceError("requested " + std::to_string(cfg.trials) +
                        " trials, above the cap of " + std::to_string(trial_cap));
  }
  if (cfg.n < 1) throw ParameterError("n", "sample size must be >= 1");
  if (!(cfg.lambda > 0.0) || !std::isfinite(cfg.lambda)) {
    throw ParameterError("lambda", "Poisson mean must be positive and finite");
  }
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomStream block_stream(std::uint64_t seed, std::uint64_t block) {
  return RandomStream(splitmix64(seed + block * 0x9e3779b97f4a7c15ULL));
}

std::int64_t poisson_sampler(double theta, RandomStream& stream) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw DomainError("poisson_sampler: theta must be positive and finite");
  }
  return theta <= kInversionCutoff ? sample_by_inversion(theta, stream)
                                   : sample_by_ptrs(theta, stream);
}

SimResult simulate_coverage(const SimConfig& cfg, unsigned threads, std::uint64_t trial_cap) {
  validate(cfg, trial_cap);

  const double theta = static_cast<double>(cfg.n) * cfg.lambda;
  const long double center = static_cast<long double>(cfg.n) * cfg.lambda;
  const long double half = static_cast<long double>(cfg.n) * cfg.budget.half_width(cfg.lambda);
  const long double guard = 8.0L * std::numeric_limits<long double>::epsilon() *
                            std::max({1.0L, std::fabs(center), half});
  const CoverageWindow window = coverage_window(cfg.n, cfg.lambda, cfg.budget);

  const std::uint64_t blocks = (cfg.trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
  std::vector<std::uint64_t> hits(blocks, 0);
  std::vector<std::uint64_t> guarded(blocks, 0);
  parallel_for(blocks, threads, [&](std::size_t block) {
    RandomStream stream = block_stream(cfg.seed, block);
    const std::uint64_t begin = block * kTrialsPerBlock;
    const std::uint64_t end = std::min(cfg.trials, begin + kTrialsPerBlock);
    std::uint64_t block_hits = 0;
    std::uint64_t block_guarded = 0;
    for (std::uint64_t t = begin; t < end; ++t) {
      const std::int64_t k = poisson_sampler(theta, stream);
      const long double distance = std::fabs(static_cast<long double>(k) - center);
      bool hit = distance < half;
      if (std::fabs(distance - half) <= guard) {
        hit = k >= window.k_min && k <= window.k_max;
        ++block_guarded;
      }
      block_hits += hit ? 1 : 0;
    }
    hits[block] = block_hits;
    guarded[block] = block_guarded;
  });

  SimResult result;
  result.trials = cfg.trials;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    result.hits += hits[b];
    result.guard_band_trials += guarded[b];
  }
  result.estimate = static_cast<double>(result.hits) / static_cast<double>(result.trials);
  result.ci_half_width =
      3.0 * std::sqrt(result.estimate * (1.0 - result.estimate) / static_cast<double>(result.trials));
  return result;
}

}  // namespace poissonplan
