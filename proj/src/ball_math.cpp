#include "ballgap/ball_math.hpp"

#include <cmath>

#include "ballgap/geometry.hpp"

namespace ballgap {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLn2 = 0.69314718055994530942;

// Lanczos, g = 7, 9 terms.
constexpr double kLanczos[9] = {
    0.99999999999980993,    676.5203681218851,     -1259.1392167224028,
    771.32342877765313,     -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7};

double simpson(double (*f)(double, int), int d, double a, double b, double fa,
               double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm, d), frm = f(rm, d);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson(f, d, a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
         simpson(f, d, m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}

double sin_pow(double phi, int d) { return std::pow(std::sin(phi), d); }

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw OutOfRange("log_gamma: requires x > 0");
  if (x < 0.5)
    return std::log(kPi / std::sin(kPi * x)) - log_gamma(1.0 - x);
  x -= 1.0;
  double a = kLanczos[0];
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x + i);
  const double t = x + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (x + 0.5) * std::log(t) - t + std::log(a);
}

double ball_volume(int d) {
  if (d < 1) throw OutOfRange("ball_volume: requires d >= 1");
  return std::exp(0.5 * d * std::log(kPi) - log_gamma(0.5 * d + 1.0));
}

double sphere_surface(int d) { return d * ball_volume(d); }

std::pair<double, double> stirling_bounds(double x) {
  if (!(x > 0.0)) throw OutOfRange("stirling_bounds: requires x > 0");
  const double log_lower =
      0.5 * std::log(2.0 * kPi) + (x + 0.5) * std::log(x) - x;
  const double lower = std::exp(log_lower);
  return {lower, std::exp(log_lower + 1.0 / (12.0 * x))};
}

double cap_volume(int d, double h) {
  if (d < 2) throw OutOfRange("cap_volume: requires d >= 2");
  if (h < -kEpsUnit || h > 1.0 + kEpsUnit)
    throw OutOfRange("cap_volume: height must lie in [0, 1]");
  h = std::min(std::max(h, 0.0), 1.0);
  if (h == 0.0) return 0.0;
  // t = cos(phi) turns the integrand into the smooth sin^d(phi).
  const double disk = ball_volume(d - 1);
  const double upper = std::acos(1.0 - h);
  const double tol = 1e-12 * ball_volume(d) / disk;
  const double fa = sin_pow(0.0, d), fb = sin_pow(upper, d);
  const double fm = sin_pow(0.5 * upper, d);
  const double whole = upper / 6.0 * (fa + 4.0 * fm + fb);
  return disk * simpson(sin_pow, d, 0.0, upper, fa, fm, fb, whole, tol, 40);
}

double cap_surface_packing_bound(int d, double theta) {
  if (!(theta > 0.0) || theta > std::sqrt(2.0) + kEpsUnit)
    throw OutOfRange("cap_surface_packing_bound: theta must lie in (0, sqrt 2]");
  const double base = 0.5 * theta * std::sqrt(1.0 - theta * theta / 16.0);
  return std::pow(base, d - 1) * ball_volume(d - 1);
}

double orthant_moment_power(int d, int k) {
  if (d < 1 || k < 0) throw OutOfRange("orthant_moment_power: d >= 1, k >= 0");
  return std::exp(log_gamma(0.5 * (k + d)) - kLn2 - log_gamma(d));
}

double orthant_moment_square(int d) {
  if (d < 1) throw OutOfRange("orthant_moment_square: requires d >= 1");
  return std::exp(2.0 * std::log(static_cast<double>(d)) - kLn2 +
                  log_gamma(0.5 * d) - log_gamma(d + 2));
}

double orthant_moment_cross(int d) {
  if (d < 2) throw OutOfRange("orthant_moment_cross: requires d >= 2");
  return std::exp(log_gamma(0.5 * d) - std::log(4.0 * (d + 1)) - log_gamma(d));
}

mc::MCEstimate mc_orthant_moment(int d, OrthantWeight weight, int k,
                                 std::uint64_t samples, std::uint64_t seed) {
  if (d < 1) throw OutOfRange("mc_orthant_moment: requires d >= 1");
  if (weight == OrthantWeight::kCross && d < 2)
    throw OutOfRange("mc_orthant_moment: cross weight requires d >= 2");
  // Proposal: independent half-normals with variance 1/2, i.e. q(y)
  // proportional to exp(-|y|^2). On the orthant (sum y)^2 >= sum y^2, so the
  // importance weights stay bounded by a polynomial times exp(-(sum y)^2 +
  // |y|^2) <= poly, and their variance is finite.
  const double prefactor = std::pow(0.5 * std::sqrt(kPi), d);
  return mc::run_sharded(samples, seed, [d, weight, k, prefactor](std::mt19937_64& rng) {
    double s1 = 0.0, s2 = 0.0, y0 = 0.0, y1 = 0.0;
    for (int i = 0; i < d; ++i) {
      const double y = std::fabs(mc::normal(rng)) / std::sqrt(2.0);
      s1 += y;
      s2 += y * y;
      if (i == 0) y0 = y;
      if (i == 1) y1 = y;
    }
    double poly = 0.0;
    switch (weight) {
      case OrthantWeight::kPower:
        poly = std::pow(s1, k);
        break;
      case OrthantWeight::kSquare:
        poly = s2;
        break;
      case OrthantWeight::kCross:
        poly = y0 * y1;
        break;
    }
    return prefactor * poly * std::exp(s2 - s1 * s1);
  });
}

}  // namespace ballgap
