#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "poissonplan/budget.hpp"

// Seeded Monte Carlo estimate of the mixed-criterion coverage. Each trial
// draws the total count K ~ Poisson(n lambda) directly, which has the same
// law as the sum of n Poisson(lambda) draws.

namespace poissonplan {

/// Trials are split into fixed-size blocks, each with its own generator
/// seeded from (seed, block index), so any thread count gives the same hits.
inline constexpr std::uint64_t kTrialsPerBlock = 65536;
inline constexpr std::uint64_t kDefaultTrialCap = 1'000'000'000;
inline constexpr std::string_view kGeneratorName =
    "mt19937_64, per-block seed = splitmix64(seed + block * 0x9e3779b97f4a7c15), 65536 trials/block";

/// One step of the splitmix64 mixer.
std::uint64_t splitmix64(std::uint64_t x);

/// Random stream with a portable uniform mapping (53 high bits of
/// mt19937_64, which the standard pins bit-for-bit).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

RandomStream block_stream(std::uint64_t seed, std::uint64_t block);

/// Exact Poisson(theta) variate: sequential-search inversion for theta <= 30,
/// Hormann's transformed rejection with squeeze (PTRS) above.
std::int64_t poisson_sampler(double theta, RandomStream& stream);

inline constexpr double kInversionCutoff = 30.0;

struct SimConfig {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::int64_t n = 1;
  double lambda = 0.0;
  ErrorBudget budget;
};

struct SimResult {
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  double estimate = 0.0;
  /// 3 * sqrt(estimate (1 - estimate) / trials).
  double ci_half_width = 0.0;
  /// Trials whose |K - n lambda| vs n w comparison fell inside the rounding
  /// guard band and were decided by the integer window rule instead.
  std::uint64_t guard_band_trials = 0;
};

/// Throws ParameterError for invalid configurations and ResourceError when
/// trials exceeds `trial_cap`. Identical inputs give identical results.
SimResult simulate_coverage(const SimConfig& cfg, unsigned threads = 0,
                            std::uint64_t trial_cap = kDefaultTrialCap);

}  // namespace poissonplan
