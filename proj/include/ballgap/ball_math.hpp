#ifndef BALLGAP_BALL_MATH_HPP_
#define BALLGAP_BALL_MATH_HPP_

#include <cstdint>
#include <utility>

#include "ballgap/mc.hpp"

// Gamma machinery, ball/sphere/cap volumes, and the positive-orthant
// Gaussian moment integrals together with a Monte Carlo oracle for them.

namespace ballgap {

/// log Gamma(x) for x > 0, Lanczos approximation (g = 7, 9 terms).
/// Relative error of exp(log_gamma) is below 1e-12 on [0.5, 200].
double log_gamma(double x);

/// pi^{d/2} / Gamma(d/2 + 1).
double ball_volume(int d);

/// vol_{d-1} of the unit sphere boundary: d * ball_volume(d).
double sphere_surface(int d);

/// Stirling bracket for Gamma(x+1):
/// lower = sqrt(2 pi) x^{x+1/2} e^{-x}, upper = lower * e^{1/(12x)}.
std::pair<double, double> stirling_bounds(double x);

/// Volume of a spherical cap of height h in the unit d-ball, by adaptive
/// Simpson quadrature (absolute target 1e-12 * ball_volume(d)).
double cap_volume(int d, double h);

/// Per-cap surface lower bound used in the theta-net packing argument:
/// (theta/2 * sqrt(1 - theta^2/16))^{d-1} * vol_{d-1}(B^{d-1}).
double cap_surface_packing_bound(int d, double theta);

// Closed forms of the orthant Gaussian moments, all in log space.
// power:  int_{R+^d} (sum y)^k e^{-(sum y)^2} dy = Gamma((k+d)/2) / (2 (d-1)!)
// square: int_{R+^d} (sum y^2) e^{-(sum y)^2} dy = d^2 Gamma(d/2) / (2 (d+1)!)
// cross:  int_{R+^d} y_i y_j  e^{-(sum y)^2} dy = Gamma(d/2) / (4 (d+1) (d-1)!)
double orthant_moment_power(int d, int k);
double orthant_moment_square(int d);
double orthant_moment_cross(int d);

enum class OrthantWeight { kPower, kSquare, kCross };

/// Importance-sampled oracle for the moments above. Half-normal proposals
/// with per-coordinate variance 1/2 keep the weights' variance finite for
/// every d. `k` is only read for the power weight.
mc::MCEstimate mc_orthant_moment(int d, OrthantWeight weight, int k,
                                 std::uint64_t samples, std::uint64_t seed);

}  // namespace ballgap

#endif  // BALLGAP_BALL_MATH_HPP_
