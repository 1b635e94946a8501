#ifndef BALLGAP_CONE_HPP_
#define BALLGAP_CONE_HPP_

#include <cstdint>

#include "ballgap/geometry.hpp"
#include "ballgap/mc.hpp"

// Spherical-simplex measures and umbrella gaps. The measure of the radial
// projection rp(S) of a facet S = [x_1..x_d] is evaluated through the
// Gaussian orthant integral
//   vol_{d-1}(rp(S)) = 2/Gamma(d/2) |det X| int_{R+^d} exp(-y^t X^t X y) dy,
// and vol_d([0, rp(S)]) is the same quantity divided by d.

namespace ballgap {

struct ConeResult {
  double cone_volume = 0.0;           // vol_d([0, S]) = |det X| / d!
  mc::MCEstimate spherical_measure;   // vol_{d-1}(rp(S))
  mc::MCEstimate solid_volume;        // vol_d([0, rp(S)]) = measure / d
};

/// |det X| / d!.
double cone_volume(const Simplex& facet);

/// MC estimate of the spherical simplex measure via the orthant integral.
/// Half-normal proposals scaled by diag(X^t X) when every off-diagonal Gram
/// entry is nonnegative (weights in (0, 1], sharp for inscribed facets);
/// otherwise the proposal carries the exact covariance and the weight is a
/// bounded 0/1 orthant indicator.
mc::MCEstimate spherical_measure(const Simplex& facet, std::uint64_t samples,
                                 std::uint64_t seed);

/// Cone volume plus measure and solid volume from a single MC run, so the
/// ratio solid = measure / d holds exactly in the result.
ConeResult cone_measures(const Simplex& facet, std::uint64_t samples,
                         std::uint64_t seed);

/// Independent oracle: uniform sphere points xi, solve X y = xi, count
/// y >= -1e-12 componentwise; fraction times sphere_surface(d).
mc::MCEstimate sphere_sampling_oracle(const Simplex& facet, std::uint64_t samples,
                                      std::uint64_t seed);

/// vol_d([0, rp(S)]) - vol_d([0, S]); stderr comes from the MC part only.
mc::MCEstimate umbrella_gap(const Simplex& facet, std::uint64_t samples,
                            std::uint64_t seed);

/// d^2/(2(d+1)) (1 - ||cg||^2) vol_d([0, S]).
double gap_lower_bound_vertex(const Simplex& facet);

/// d sqrt(1-r^2)/(2(d+1)) (1 - ||cg||^2) vol_{d-1}(S).
double gap_lower_bound_facet(const Simplex& facet);

}  // namespace ballgap

#endif  // BALLGAP_CONE_HPP_
