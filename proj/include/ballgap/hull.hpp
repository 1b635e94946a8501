#ifndef BALLGAP_HULL_HPP_
#define BALLGAP_HULL_HPP_

#include <stdexcept>
#include <string>
#include <vector>

#include "ballgap/geometry.hpp"

// d-dimensional convex hull of sphere points with simplicial facet output.
// Incremental beneath-beyond insertion with a conflict graph; co-spherical
// degeneracies are resolved by one deterministic tangential perturbation
// retry (magnitude 1e-10, reported on the result).

namespace ballgap {

struct TooFewPoints : std::runtime_error {
  explicit TooFewPoints(const std::string& m) : std::runtime_error(m) {}
};
struct DegenerateInput : std::runtime_error {
  explicit DegenerateInput(const std::string& m) : std::runtime_error(m) {}
};
struct NumericalFailure : std::runtime_error {
  explicit NumericalFailure(const std::string& m) : std::runtime_error(m) {}
};
struct OriginNotInterior : std::runtime_error {
  explicit OriginNotInterior(const std::string& m) : std::runtime_error(m) {}
};

struct HullFacet {
  std::vector<int> vertex_ids;   // d indices into Polytope::vertices
  std::vector<double> normal;    // unit, oriented away from the point centroid
  double offset = 0.0;           // normal . x = offset on the facet plane
};

struct Polytope {
  int dim = 0;
  std::vector<SpherePoint> vertices;
  std::vector<HullFacet> facets;
  int ridge_count = 0;
  bool perturbed = false;

  /// Facet j as a value simplex.
  Simplex facet_simplex(int j) const;
  /// Smallest facet offset; positive iff the origin is strictly interior.
  double min_offset() const;
};

/// Convex hull of >= d+1 points. Duplicates closer than 1e-10 are merged
/// first. Every surviving input point ends up a hull vertex (co-spherical
/// inputs admit no interior points); if the float predicates disagree the
/// build is retried once on deterministically perturbed points.
Polytope convex_hull(const std::vector<SpherePoint>& points);

/// Sum of facet cone volumes |det X_j| / d!. Requires the origin interior.
double polytope_volume(const Polytope& p);

/// Sum of facet areas.
double surface_area(const Polytope& p);

/// Serialization: {dimension, vertices, facets} with 17 significant digits.
std::string polytope_to_json(const Polytope& p);
Polytope polytope_from_json(const std::string& text);

}  // namespace ballgap

#endif  // BALLGAP_HULL_HPP_
