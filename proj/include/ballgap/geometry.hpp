#ifndef BALLGAP_GEOMETRY_HPP_
#define BALLGAP_GEOMETRY_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace ballgap {

inline constexpr double kEpsUnit = 1e-12;  // unit-norm tolerance
inline constexpr double kEpsHull = 1e-9;   // degeneracy / visibility tolerance

struct DegenerateFacet : std::runtime_error {
  explicit DegenerateFacet(const std::string& m) : std::runtime_error(m) {}
};
struct OutOfRange : std::runtime_error {
  explicit OutOfRange(const std::string& m) : std::runtime_error(m) {}
};

/// A point on the unit sphere in R^d. Inputs are renormalized on
/// construction; a zero vector or d < 2 is rejected.
class SpherePoint {
 public:
  explicit SpherePoint(std::vector<double> coords);
  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& coords() const { return coords_; }

 private:
  std::vector<double> coords_;
};

/// Hyperplane { x : normal . x = offset } with unit normal oriented away
/// from the origin, offset in [0, 1].
struct Hyperplane {
  std::vector<double> normal;
  double offset = 0.0;
};

/// Spherical cap determined by a hyperplane at distance 1-h from the origin.
struct Cap {
  double height = 0.0;
  double radius = 0.0;
};

/// A (d-1)-simplex with all vertices on the unit sphere, held by value.
/// Columns of the implied matrix X are the vertices.
class Simplex {
 public:
  explicit Simplex(std::vector<SpherePoint> vertices);
  int dim() const { return static_cast<int>(vertices_.size()); }
  const SpherePoint& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
  const std::vector<SpherePoint>& vertices() const { return vertices_; }
  /// det(X); zero iff the cone over the facet is degenerate.
  double det_x() const { return det_; }

 private:
  std::vector<SpherePoint> vertices_;
  double det_ = 0.0;
};

struct FacetStats {
  double h = 0.0;                   // cap height
  double r = 0.0;                   // cap radius
  std::vector<double> cg_facet;     // centroid of the facet
  std::vector<double> cg_disk;      // centroid of H cap B = offset * normal
  double offset_norm = 0.0;         // ||cg_facet - cg_disk||
  double area = 0.0;                // (d-1)-volume of the facet
};

/// Hyperplane through the facet's vertices, oriented away from the origin.
/// Throws DegenerateFacet when |det X| < eps_hull (this also rejects facets
/// whose affine hull passes through the origin).
Hyperplane facet_hyperplane(const Simplex& facet);

/// Cap of the halfspace cut off by a hyperplane at the given distance from
/// the origin: h = 1 - offset, r = sqrt(2h - h^2).
Cap cap_of(double offset);
inline Cap cap_of(const Hyperplane& h) { return cap_of(h.offset); }

/// Cap height/radius, centroids and area of a facet. The area comes from the
/// cone-volume identity vol_d([0,F]) = area * offset / d = |det X| / d!.
FacetStats facet_stats(const Simplex& facet);

}  // namespace ballgap

#endif  // BALLGAP_GEOMETRY_HPP_
