#include "ballgap/cone.hpp"

#include <cmath>

#include "ballgap/ball_math.hpp"
#include "ballgap/linalg.hpp"

namespace ballgap {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kOrthantTol = -1e-12;  // componentwise nonnegativity slack

linalg::Matrix gram(const Simplex& facet) {
  const int d = facet.dim();
  linalg::Matrix g(d, std::vector<double>(d));
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      double s = 0.0;
      for (int k = 0; k < d; ++k) s += facet.vertex(i)[k] * facet.vertex(j)[k];
      g[i][j] = g[j][i] = s;
    }
  return g;
}

double centroid_norm_sq(const Simplex& facet) {
  const int d = facet.dim();
  double nsq = 0.0;
  for (int k = 0; k < d; ++k) {
    double c = 0.0;
    for (int i = 0; i < d; ++i) c += facet.vertex(i)[k] / d;
    nsq += c * c;
  }
  return nsq;
}

}  // namespace

double cone_volume(const Simplex& facet) {
  if (std::fabs(facet.det_x()) < kEpsHull)
    throw DegenerateFacet("cone_volume: |det X| below tolerance");
  double fact = 1.0;
  for (int i = 2; i <= facet.dim(); ++i) fact *= i;
  return std::fabs(facet.det_x()) / fact;
}

mc::MCEstimate spherical_measure(const Simplex& facet, std::uint64_t samples,
                                 std::uint64_t seed) {
  const int d = facet.dim();
  if (std::fabs(facet.det_x()) < kEpsHull)
    throw DegenerateFacet("spherical_measure: |det X| below tolerance");
  const linalg::Matrix g = gram(facet);

  bool offdiag_nonneg = true;
  for (int i = 0; i < d && offdiag_nonneg; ++i)
    for (int j = i + 1; j < d; ++j)
      if (g[i][j] < 0.0) {
        offdiag_nonneg = false;
        break;
      }

  if (offdiag_nonneg) {
    // Half-normal proposal with covariance diag(G)^{-1}/2 = I/2 (unit
    // vertices). The weight exp(-sum_{i != j} G_ij y_i y_j) stays in (0, 1]
    // and its variance is finite because y^t (2G - I) y >= |y|^2 on the
    // orthant. Facets of inscribed polytopes have G close to the all-ones
    // matrix, so the weights barely move and the estimator is sharp enough
    // to resolve the gap against the exact cone volume.
    const double prefactor = 2.0 * std::fabs(facet.det_x()) /
                             std::exp(log_gamma(0.5 * d)) *
                             std::pow(std::sqrt(kPi) / 2.0, d);
    return mc::run_sharded(samples, seed, [&g, d, prefactor](std::mt19937_64& rng) {
      std::vector<double> y(d);
      for (int i = 0; i < d; ++i)
        y[i] = std::fabs(mc::normal(rng)) / std::sqrt(2.0);
      double cross = 0.0;
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) cross += g[i][j] * y[i] * y[j];
      return prefactor * std::exp(-2.0 * cross);
    });
  }

  // Negative off-diagonal entries (wide facets) make the weighted estimator's
  // variance blow up, so switch the proposal to the exact covariance: with
  // G = L L^t and u = L^t y the orthant integral becomes sphere_surface(d)
  // times the Gaussian orthant probability P(L^{-t} u >= 0), a bounded 0/1
  // weight for arbitrary facets.
  linalg::Matrix chol;
  if (!linalg::cholesky(g, chol, 1e-24))
    throw DegenerateFacet("spherical_measure: Gram matrix not positive definite");
  const double surf = sphere_surface(d);
  return mc::run_sharded(samples, seed, [&chol, d, surf](std::mt19937_64& rng) {
    std::vector<double> y(d);
    // back substitution for L^t y = u, scale-free in u
    for (int i = d - 1; i >= 0; --i) {
      double s = mc::normal(rng);
      for (int j = i + 1; j < d; ++j) s -= chol[j][i] * y[j];
      y[i] = s / chol[i][i];
    }
    double scale = 0.0;
    for (int i = 0; i < d; ++i) scale = std::max(scale, std::fabs(y[i]));
    for (int i = 0; i < d; ++i)
      if (y[i] < kOrthantTol * scale) return 0.0;
    return surf;
  });
}

ConeResult cone_measures(const Simplex& facet, std::uint64_t samples,
                         std::uint64_t seed) {
  ConeResult r;
  r.cone_volume = cone_volume(facet);
  r.spherical_measure = spherical_measure(facet, samples, seed);
  r.solid_volume = r.spherical_measure;
  r.solid_volume.value /= facet.dim();
  r.solid_volume.stderr_ /= facet.dim();
  return r;
}

mc::MCEstimate sphere_sampling_oracle(const Simplex& facet, std::uint64_t samples,
                                      std::uint64_t seed) {
  const int d = facet.dim();
  linalg::Matrix lu(d, std::vector<double>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) lu[i][j] = facet.vertex(j)[i];
  std::vector<int> perm;
  if (linalg::lu_factor(lu, perm, kEpsHull / 100.0) == 0)
    throw DegenerateFacet("sphere_sampling_oracle: singular vertex matrix");
  const double surf = sphere_surface(d);
  return mc::run_sharded(samples, seed, [&lu, &perm, d, surf](std::mt19937_64& rng) {
    const std::vector<double> xi = mc::sphere_direction(d, rng);
    std::vector<double> y;
    linalg::lu_solve(lu, perm, xi, y);
    for (int i = 0; i < d; ++i)
      if (y[i] < kOrthantTol) return 0.0;
    return surf;
  });
}

mc::MCEstimate umbrella_gap(const Simplex& facet, std::uint64_t samples,
                            std::uint64_t seed) {
  const ConeResult r = cone_measures(facet, samples, seed);
  mc::MCEstimate e = r.solid_volume;
  e.value -= r.cone_volume;
  return e;
}

double gap_lower_bound_vertex(const Simplex& facet) {
  const int d = facet.dim();
  double fact = 1.0;
  for (int i = 2; i <= d; ++i) fact *= i;
  const double cone = std::fabs(facet.det_x()) / fact;
  return 0.5 * d * d / (d + 1) * (1.0 - centroid_norm_sq(facet)) * cone;
}

double gap_lower_bound_facet(const Simplex& facet) {
  const int d = facet.dim();
  const FacetStats s = facet_stats(facet);
  const double root = std::sqrt(std::max(0.0, 1.0 - s.r * s.r));
  return 0.5 * d * root / (d + 1) * (1.0 - centroid_norm_sq(facet)) * s.area;
}

}  // namespace ballgap
