#include <cmath>
#include <random>
#include <vector>

#include "ballgap/geometry.hpp"
#include "ballgap/linalg.hpp"
#include "ballgap/mc.hpp"
#include "doctest.h"

using namespace ballgap;

namespace {

SpherePoint axis(int d, int k, double sign = 1.0) {
  std::vector<double> c(d, 0.0);
  c[k] = sign;
  return SpherePoint(c);
}

Simplex random_facet(int d, std::mt19937_64& rng) {
  for (;;) {
    std::vector<SpherePoint> v;
    for (int i = 0; i < d; ++i) v.emplace_back(mc::sphere_direction(d, rng));
    Simplex s(std::move(v));
    if (std::fabs(s.det_x()) > 0.05) return s;
  }
}

// Independent oracle: distance from the origin to the affine hull by
// least squares over the difference-vector parametrization.
double affine_hull_distance(const Simplex& f) {
  const int d = f.dim();
  linalg::Matrix bbt(d - 1, std::vector<double>(d - 1));
  std::vector<std::vector<double>> diffs;
  for (int i = 1; i < d; ++i) {
    std::vector<double> diff(d);
    for (int k = 0; k < d; ++k) diff[k] = f.vertex(i)[k] - f.vertex(0)[k];
    diffs.push_back(std::move(diff));
  }
  std::vector<double> rhs(d - 1);
  for (int i = 0; i + 1 < d; ++i) {
    for (int j = 0; j + 1 < d; ++j) bbt[i][j] = linalg::dot(diffs[i], diffs[j]);
    rhs[i] = -linalg::dot(diffs[i], f.vertex(0).coords());
  }
  std::vector<double> t;
  REQUIRE(linalg::solve(bbt, rhs, t));
  std::vector<double> closest = f.vertex(0).coords();
  for (int i = 0; i + 1 < d; ++i)
    for (int k = 0; k < d; ++k) closest[k] += t[i] * diffs[i][k];
  return linalg::norm(closest);
}

}  // namespace

TEST_CASE("sphere points are renormalized") {
  SpherePoint p({3.0, 4.0});
  CHECK(p[0] == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(p[1] == doctest::Approx(0.8).epsilon(1e-14));
  CHECK_THROWS_AS(SpherePoint({0.0, 0.0}), OutOfRange);
  CHECK_THROWS_AS(SpherePoint({1.0}), OutOfRange);
}

TEST_CASE("facet_hyperplane on symmetric facets") {
  Simplex oct({axis(3, 0), axis(3, 1), axis(3, 2)});
  const Hyperplane h = facet_hyperplane(oct);
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  CHECK(h.offset == doctest::Approx(inv_sqrt3).epsilon(1e-12));
  for (int k = 0; k < 3; ++k)
    CHECK(h.normal[k] == doctest::Approx(inv_sqrt3).epsilon(1e-12));

  Simplex edge({axis(2, 0), axis(2, 1)});
  const Hyperplane h2 = facet_hyperplane(edge);
  CHECK(h2.offset == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("facet_hyperplane matches the least-squares affine-hull oracle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Simplex f = random_facet(4, rng);
    const Hyperplane h = facet_hyperplane(f);
    CHECK(h.offset == doctest::Approx(affine_hull_distance(f)).epsilon(1e-10));
    for (int i = 0; i < 4; ++i) {
      double dot = 0.0;
      for (int k = 0; k < 4; ++k) dot += h.normal[k] * f.vertex(i)[k];
      CHECK(dot == doctest::Approx(h.offset).epsilon(1e-10));
    }
  }
}

TEST_CASE("degenerate facets are rejected") {
  const SpherePoint p = axis(3, 0);
  CHECK_THROWS_AS(facet_hyperplane(Simplex({p, p, axis(3, 1)})), DegenerateFacet);
}

TEST_CASE("cap_of endpoints and interior value") {
  CHECK(cap_of(1.0).height == doctest::Approx(0.0));
  CHECK(cap_of(1.0).radius == doctest::Approx(0.0));
  CHECK(cap_of(0.0).height == doctest::Approx(1.0));
  CHECK(cap_of(0.0).radius == doctest::Approx(1.0));
  const Cap c = cap_of(1.0 / std::sqrt(3.0));
  CHECK(c.height == doctest::Approx(1.0 - 1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(c.radius == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
  // r = sqrt(1 - offset^2) is the same circle radius
  CHECK(c.radius == doctest::Approx(std::sqrt(1.0 - 1.0 / 3.0)).epsilon(1e-12));
  CHECK_THROWS_AS(cap_of(1.5), OutOfRange);
  CHECK_THROWS_AS(cap_of(-0.5), OutOfRange);
}

TEST_CASE("facet_stats on the octant facet") {
  Simplex oct({axis(3, 0), axis(3, 1), axis(3, 2)});
  const FacetStats s = facet_stats(oct);
  CHECK(s.area == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
  CHECK(s.offset_norm == doctest::Approx(0.0).epsilon(1e-12));
  for (int k = 0; k < 3; ++k) {
    CHECK(s.cg_facet[k] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(s.cg_disk[k] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
  CHECK(s.h == doctest::Approx(1.0 - 1.0 / std::sqrt(3.0)).epsilon(1e-12));

  Simplex edge({axis(2, 0), axis(2, 1)});
  const FacetStats s2 = facet_stats(edge);
  CHECK(s2.area == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(s2.h == doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("facet area matches the d=3 cross-product oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Simplex f = random_facet(3, rng);
    std::vector<double> u(3), v(3);
    for (int k = 0; k < 3; ++k) {
      u[k] = f.vertex(1)[k] - f.vertex(0)[k];
      v[k] = f.vertex(2)[k] - f.vertex(0)[k];
    }
    const std::vector<double> cross = {u[1] * v[2] - u[2] * v[1],
                                       u[2] * v[0] - u[0] * v[2],
                                       u[0] * v[1] - u[1] * v[0]};
    const double oracle = 0.5 * linalg::norm(cross);
    CHECK(facet_stats(f).area == doctest::Approx(oracle).epsilon(1e-10));
  }
}

TEST_CASE("facet invariants on random facets") {
  std::mt19937_64 rng(13);
  for (int d = 2; d <= 5; ++d) {
    for (int trial = 0; trial < 40; ++trial) {
      const Simplex f = random_facet(d, rng);
      const Hyperplane hp = facet_hyperplane(f);
      const FacetStats s = facet_stats(f);
      // vertices on the unit sphere force r^2 + offset^2 = 1
      CHECK(s.r * s.r + hp.offset * hp.offset == doctest::Approx(1.0).epsilon(1e-10));
      // Pythagorean centroid identity
      const double cg_sq = linalg::dot(s.cg_facet, s.cg_facet);
      CHECK(cg_sq == doctest::Approx((1.0 - s.h) * (1.0 - s.h) +
                                     s.offset_norm * s.offset_norm)
                         .epsilon(1e-10));
      CHECK(s.area > 0.0);
      CHECK(s.offset_norm <= s.r + 1e-10);
    }
  }
}
