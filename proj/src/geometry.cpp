#include "ballgap/geometry.hpp"

#include <cmath>

#include "ballgap/linalg.hpp"

namespace ballgap {

SpherePoint::SpherePoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) throw OutOfRange("SpherePoint: dimension must be >= 2");
  const double n = linalg::norm(coords_);
  if (!(n > 0.0) || !std::isfinite(n))
    throw OutOfRange("SpherePoint: cannot normalize zero or non-finite vector");
  for (double& c : coords_) c /= n;
}

Simplex::Simplex(std::vector<SpherePoint> vertices) : vertices_(std::move(vertices)) {
  const int d = static_cast<int>(vertices_.size());
  for (const SpherePoint& v : vertices_)
    if (v.dim() != d) throw OutOfRange("Simplex: needs d vertices of dimension d");
  linalg::Matrix x(d, std::vector<double>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) x[i][j] = vertices_[j][i];
  det_ = linalg::det(x);
}

Hyperplane facet_hyperplane(const Simplex& facet) {
  const int d = facet.dim();
  if (std::fabs(facet.det_x()) < kEpsHull)
    throw DegenerateFacet("facet_hyperplane: |det X| below tolerance");
  // normal . x_i = t for every vertex: solve X^t n = 1, then t = 1/||n||.
  linalg::Matrix xt(d, std::vector<double>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) xt[i][j] = facet.vertex(i)[j];
  std::vector<double> n;
  if (!linalg::solve(xt, std::vector<double>(d, 1.0), n))
    throw DegenerateFacet("facet_hyperplane: singular vertex matrix");
  const double nn = linalg::norm(n);
  if (!(nn > 0.0)) throw DegenerateFacet("facet_hyperplane: zero normal");
  Hyperplane h;
  h.normal.resize(d);
  for (int i = 0; i < d; ++i) h.normal[i] = n[i] / nn;
  h.offset = 1.0 / nn;
  return h;
}

Cap cap_of(double offset) {
  if (offset < -kEpsUnit || offset > 1.0 + kEpsUnit)
    throw OutOfRange("cap_of: offset must lie in [0, 1]");
  if (offset < 0.0) offset = 0.0;
  if (offset > 1.0) offset = 1.0;
  Cap c;
  c.height = 1.0 - offset;
  c.radius = std::sqrt(std::max(0.0, 2.0 * c.height - c.height * c.height));
  return c;
}

FacetStats facet_stats(const Simplex& facet) {
  const int d = facet.dim();
  const Hyperplane hp = facet_hyperplane(facet);
  const Cap cap = cap_of(hp);
  FacetStats s;
  s.h = cap.height;
  s.r = cap.radius;
  s.cg_facet.assign(d, 0.0);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) s.cg_facet[i] += facet.vertex(j)[i] / d;
  s.cg_disk.resize(d);
  for (int i = 0; i < d; ++i) s.cg_disk[i] = hp.offset * hp.normal[i];
  double on = 0.0;
  for (int i = 0; i < d; ++i) {
    const double diff = s.cg_facet[i] - s.cg_disk[i];
    on += diff * diff;
  }
  s.offset_norm = std::sqrt(on);
  double fact = 1.0;
  for (int i = 2; i < d; ++i) fact *= i;  // (d-1)!
  s.area = std::fabs(facet.det_x()) / (fact * hp.offset);
  return s;
}

}  // namespace ballgap
