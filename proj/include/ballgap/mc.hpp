#ifndef BALLGAP_MC_HPP_
#define BALLGAP_MC_HPP_

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace ballgap::mc {

/// Monte Carlo estimate with its uncertainty. The value is deterministic for
/// fixed (seed, samples, shards) regardless of how many threads ran the
/// shards.
struct MCEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  int shards = 1;
};

inline constexpr int kDefaultShards = 64;

/// Worker cap from BALLGAP_THREADS (0 = let OpenMP decide).
int thread_cap();

namespace detail {
struct Partial {
  double sum = 0.0;
  double sumsq = 0.0;
};

void parallel_shard_loop(int shards, const std::function<void(int)>& body);
}  // namespace detail

/// Shard-reproducible mean estimator. `kernel(rng)` must return one sample
/// of the quantity whose mean is being estimated. Shard s uses seed + s.
/// The serial path is the reference implementation; the parallel path runs
/// the identical shards under OpenMP and merges them in shard order, so both
/// produce bitwise-identical results.
template <typename Kernel>
MCEstimate run_sharded(std::uint64_t samples, std::uint64_t seed, Kernel&& kernel,
                       int shards = kDefaultShards, bool parallel = true) {
  if (shards < 1) shards = 1;
  std::vector<detail::Partial> partials(shards);
  auto run_shard = [&](int s) {
    std::uint64_t lo = samples * s / shards;
    std::uint64_t hi = samples * (s + 1) / shards;
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(s));
    detail::Partial p;
    for (std::uint64_t i = lo; i < hi; ++i) {
      const double v = kernel(rng);
      p.sum += v;
      p.sumsq += v * v;
    }
    partials[s] = p;
  };
  if (parallel) {
    detail::parallel_shard_loop(shards, run_shard);
  } else {
    for (int s = 0; s < shards; ++s) run_shard(s);
  }
  double sum = 0.0, sumsq = 0.0;
  for (const auto& p : partials) {
    sum += p.sum;
    sumsq += p.sumsq;
  }
  MCEstimate e;
  e.samples = samples;
  e.seed = seed;
  e.shards = shards;
  const double n = static_cast<double>(samples);
  e.value = sum / n;
  const double var = std::max(0.0, sumsq / n - e.value * e.value);
  e.stderr_ = std::sqrt(var / n);
  return e;
}

/// Standard normal draw. A fresh distribution per call avoids the cached
/// spare variate, which would break shard-order reproducibility.
inline double normal(std::mt19937_64& rng) {
  return std::normal_distribution<double>(0.0, 1.0)(rng);
}

inline double uniform(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

/// Uniform point on the unit sphere in R^d.
std::vector<double> sphere_direction(int d, std::mt19937_64& rng);

/// Uniform point in the unit ball in R^d.
std::vector<double> ball_point(int d, std::mt19937_64& rng);

}  // namespace ballgap::mc

#endif  // BALLGAP_MC_HPP_
