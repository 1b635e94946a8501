#ifndef BALLGAP_APPROXIMATOR_HPP_
#define BALLGAP_APPROXIMATOR_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "ballgap/hull.hpp"
#include "ballgap/mc.hpp"

// Net-based construction of inscribed polytopes, ball-polytope metrics,
// facet classification, and the inequality audits.

namespace ballgap {

struct PoolTooSmall : std::runtime_error {
  explicit PoolTooSmall(const std::string& m) : std::runtime_error(m) {}
};
struct PreconditionViolated : std::runtime_error {
  explicit PreconditionViolated(const std::string& m) : std::runtime_error(m) {}
};

struct NetConfig {
  int d = 3;
  double theta = 0.0;    // separation; 0 means "hit target n instead"
  int n = 0;             // target vertex count (requires n >= 2d)
  std::uint64_t seed = 1;
  int pool_size = 0;     // candidate pool; 0 means 200 * n
};

struct NetResult {
  std::vector<SpherePoint> points;
  double theta = 0.0;  // separation actually enforced
};

/// Maximal theta-separated subset of a uniform candidate pool (greedy).
/// With a target n, a bisection on theta lands the count at or just above n
/// and the surplus last-added points are dropped.
NetResult greedy_net(const NetConfig& cfg);

/// convex_hull(greedy_net(...)) with exactly n vertices.
Polytope build_qn(int d, int n, std::uint64_t seed);

/// Hausdorff distance to the ball: max facet cap height. Requires the
/// origin strictly interior and all vertices on the sphere.
double hausdorff_gap(const Polytope& p);

/// Independent check of hausdorff_gap from a dense direction sample: the
/// largest hyperplane violation over sampled boundary directions.
double hausdorff_gap_sampled(const Polytope& p, std::uint64_t directions,
                             std::uint64_t seed);

struct SymmetricDifference {
  mc::MCEstimate decomposition;  // sum of per-facet umbrella gaps
  mc::MCEstimate rejection;      // vol(B) * (ball samples outside P)
};

/// Two independent estimates of vol(B) - vol(P). `samples` is the total
/// budget: the decomposition spreads it over facets (at least 1e4 each),
/// the rejection oracle uses it whole.
SymmetricDifference symmetric_difference(const Polytope& p, std::uint64_t samples,
                                         std::uint64_t seed);

enum class FacetLabel { kShallow, kOffCenter, kGood, kOther };

struct FacetClass {
  int facet_id = 0;
  FacetLabel label = FacetLabel::kOther;
  double h = 0.0;
  double r = 0.0;
  double offset_norm = 0.0;
  double area = 0.0;
  double shallow_threshold = 0.0;    // rho
  double height_upper = 0.0;         // condition (6) upper bound on h
  double offcenter_threshold = 0.0;  // (2^22-1)/2^22 * r
  bool is_shallow = false;
  bool is_off_center = false;
  bool cond6 = false;
  bool cond7 = false;
};

/// Facet classification with the thresholds evaluated at the effective
/// vertex count (2n when `double_count`, matching how the main bound applies
/// the shallow/off-center estimates to a polytope with at most 2n vertices).
std::vector<FacetClass> classify_facets(const Polytope& p, int n, bool double_count);

struct Lemma7Result {
  std::vector<double> direction;  // cap direction of the best cap found
  double cap_height = 0.0;        // = 2 * delta
  double mass_fraction = 0.0;
  bool found = false;             // mass_fraction >= 1/2
};

/// Searches caps of height 2*delta for one holding at least half of the
/// cloud's mass, starting from the centroid direction then a random
/// direction net. Requires ||cg|| >= 1 - delta.
Lemma7Result lemma7_search(const std::vector<std::vector<double>>& points,
                           const std::vector<double>& weights, double delta,
                           int extra_directions = 512, std::uint64_t seed = 1);

struct AuditCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string relation;  // "<=" or ">="
  double margin = 0.0;   // nonnegative iff the relation holds
  bool pass = false;
  std::string note;
};

struct AuditReport {
  std::vector<AuditCheck> checks;
  bool overall_pass = false;
  int d = 0;
  int n = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  bool in_regime = true;
};

/// Chain of inequalities behind the lower bound on vol(B) - vol(P), one
/// check per link, ending at 2^-36 vol_{d-1}(boundary) n^{-2/(d-1)}.
/// Runs (flagged) even when n is below the regime threshold.
AuditReport theorem1_audit(const Polytope& p, int n, std::uint64_t samples,
                           std::uint64_t seed);

/// Upper-bound side: the Hausdorff net bound, the symmetric-difference
/// bound (64/7) pi d n^{-2/(d-1)} vol(B), the surface inequality in its
/// regime, and decomposition-vs-rejection oracle agreement.
AuditReport upper_bound_audit(const Polytope& p, int n, std::uint64_t samples,
                              std::uint64_t seed);

/// (32/7) (vol_{d-1}(boundary B) / vol_{d-1}(B^{d-1}))^{2/(d-1)}.
double del_bound(int d);

std::string audit_to_json(const AuditReport& r);
std::string audit_to_csv(const AuditReport& r);

}  // namespace ballgap

#endif  // BALLGAP_APPROXIMATOR_HPP_
