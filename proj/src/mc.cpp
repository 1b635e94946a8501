#include "ballgap/mc.hpp"

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ballgap::mc {

int thread_cap() {
  static const int cap = [] {
    const char* env = std::getenv("BALLGAP_THREADS");
    if (env == nullptr) return 0;
    const int v = std::atoi(env);
    return v > 0 ? v : 0;
  }();
  return cap;
}

namespace detail {

void parallel_shard_loop(int shards, const std::function<void(int)>& body) {
#ifdef _OPENMP
  const int cap = thread_cap();
  if (cap > 0) {
#pragma omp parallel for schedule(dynamic) num_threads(cap)
    for (int s = 0; s < shards; ++s) body(s);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < shards; ++s) body(s);
  }
#else
  for (int s = 0; s < shards; ++s) body(s);
#endif
}

}  // namespace detail

std::vector<double> sphere_direction(int d, std::mt19937_64& rng) {
  std::vector<double> x(d);
  double nrm2 = 0.0;
  do {
    nrm2 = 0.0;
    for (int i = 0; i < d; ++i) {
      x[i] = normal(rng);
      nrm2 += x[i] * x[i];
    }
  } while (nrm2 == 0.0);
  const double inv = 1.0 / std::sqrt(nrm2);
  for (int i = 0; i < d; ++i) x[i] *= inv;
  return x;
}

std::vector<double> ball_point(int d, std::mt19937_64& rng) {
  std::vector<double> x = sphere_direction(d, rng);
  const double r = std::pow(uniform(rng), 1.0 / d);
  for (int i = 0; i < d; ++i) x[i] *= r;
  return x;
}

}  // namespace ballgap::mc
