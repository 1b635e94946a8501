#include "ballgap/approximator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "ballgap/ball_math.hpp"
#include "ballgap/cone.hpp"
#include "ballgap/linalg.hpp"
#include "json.hpp"

namespace ballgap {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kOffCenterFactor = (4194304.0 - 1.0) / 4194304.0;  // (2^22-1)/2^22

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  return seed + 0x9e3779b97f4a7c15ull * (salt + 1);
}

struct CellHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b9;
      h *= 1099511628211ull;
    }
    return h;
  }
};

std::vector<int> cell_of(const std::vector<double>& p, double width) {
  std::vector<int> c(p.size());
  for (std::size_t k = 0; k < p.size(); ++k)
    c[k] = static_cast<int>(std::floor(p[k] / width));
  return c;
}

// Greedy maximal theta-separated subset of the pool, in pool order. A grid
// with cell width theta keeps the neighbor checks local.
std::vector<int> greedy_select(const std::vector<std::vector<double>>& pool,
                               double theta) {
  const int d = static_cast<int>(pool[0].size());
  std::vector<int> chosen;
  std::unordered_map<std::vector<int>, std::vector<int>, CellHash> grid;
  std::vector<int> nb(d);
  for (std::size_t p = 0; p < pool.size(); ++p) {
    const std::vector<int> cell = cell_of(pool[p], theta);
    bool blocked = false;
    // scan the 3^d neighborhood
    std::vector<int> offs(d, -1);
    while (!blocked) {
      for (int k = 0; k < d; ++k) nb[k] = cell[k] + offs[k];
      auto it = grid.find(nb);
      if (it != grid.end()) {
        for (int q : it->second) {
          double dsq = 0.0;
          for (int k = 0; k < d; ++k) {
            const double diff = pool[p][k] - pool[q][k];
            dsq += diff * diff;
          }
          if (dsq < theta * theta) {
            blocked = true;
            break;
          }
        }
      }
      int k = 0;
      while (k < d && offs[k] == 1) offs[k++] = -1;
      if (k == d) break;
      ++offs[k];
    }
    if (!blocked) {
      grid[cell].push_back(static_cast<int>(p));
      chosen.push_back(static_cast<int>(p));
    }
  }
  return chosen;
}

std::vector<std::vector<double>> make_pool(int d, int size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> pool;
  pool.reserve(size);
  for (int i = 0; i < size; ++i) pool.push_back(mc::sphere_direction(d, rng));
  return pool;
}

AuditCheck make_check(std::string name, double lhs, double rhs,
                      std::string relation, std::string note = "") {
  AuditCheck c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.relation = std::move(relation);
  c.margin = (c.relation == ">=") ? lhs - rhs : rhs - lhs;
  c.pass = c.margin >= 0.0;
  c.note = std::move(note);
  return c;
}

}  // namespace

NetResult greedy_net(const NetConfig& cfg) {
  if (cfg.d < 2) throw OutOfRange("greedy_net: requires d >= 2");
  if (cfg.theta > 0.0) {
    if (cfg.theta > 2.0) throw OutOfRange("greedy_net: theta must lie in (0, 2]");
    const int pool_size = cfg.pool_size > 0 ? cfg.pool_size : 10000;
    const auto pool = make_pool(cfg.d, pool_size, cfg.seed);
    NetResult out;
    out.theta = cfg.theta;
    for (int idx : greedy_select(pool, cfg.theta))
      out.points.emplace_back(pool[idx]);
    return out;
  }
  if (cfg.n < 2 * cfg.d)
    throw PreconditionViolated("greedy_net: requires n >= 2d");
  const int pool_size = cfg.pool_size > 0 ? cfg.pool_size : 200 * cfg.n;
  if (pool_size < 50 * cfg.n)
    throw PoolTooSmall("greedy_net: pool_size must be at least 50 * n");
  const auto pool = make_pool(cfg.d, pool_size, cfg.seed);

  // Bisection on theta: count decreases as theta grows; land at or just
  // above n, then drop the surplus last-added points.
  const int slack = std::max(1, cfg.n / 100);
  double lo = 1e-4, hi = 2.0;
  double best_theta = lo;
  std::vector<int> best = greedy_select(pool, lo);
  if (static_cast<int>(best.size()) < cfg.n)
    throw PoolTooSmall("greedy_net: pool cannot supply n separated points");
  for (int iter = 0; iter < 40; ++iter) {
    const double mid = 0.5 * (lo + hi);
    std::vector<int> sel = greedy_select(pool, mid);
    if (static_cast<int>(sel.size()) >= cfg.n) {
      lo = mid;
      best_theta = mid;
      best = std::move(sel);
      if (static_cast<int>(best.size()) <= cfg.n + slack) break;
    } else {
      hi = mid;
    }
  }
  best.resize(cfg.n);
  NetResult out;
  out.theta = best_theta;
  for (int idx : best) out.points.emplace_back(pool[idx]);
  return out;
}

Polytope build_qn(int d, int n, std::uint64_t seed) {
  NetConfig cfg;
  cfg.d = d;
  cfg.n = n;
  cfg.seed = seed;
  return convex_hull(greedy_net(cfg).points);
}

double hausdorff_gap(const Polytope& p) {
  const double off = p.min_offset();
  if (off <= 0.0) throw OriginNotInterior("hausdorff_gap: origin not interior");
  return 1.0 - off;
}

double hausdorff_gap_sampled(const Polytope& p, std::uint64_t directions,
                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (std::uint64_t i = 0; i < directions; ++i) {
    const std::vector<double> xi = mc::sphere_direction(p.dim, rng);
    double best = 0.0;
    for (const HullFacet& f : p.facets)
      best = std::max(best, linalg::dot(f.normal, xi) - f.offset);
    worst = std::max(worst, best);
  }
  return worst;
}

SymmetricDifference symmetric_difference(const Polytope& p, std::uint64_t samples,
                                         std::uint64_t seed) {
  const double min_off = p.min_offset();
  if (min_off <= 0.0)
    throw OriginNotInterior("symmetric_difference: origin not interior");
  const int m = static_cast<int>(p.facets.size());
  const std::uint64_t per_facet = std::max<std::uint64_t>(10000, samples / m);

  SymmetricDifference out;
  double sum = 0.0, var = 0.0;
  for (int j = 0; j < m; ++j) {
    const mc::MCEstimate g =
        umbrella_gap(p.facet_simplex(j), per_facet, mix_seed(seed, j));
    sum += g.value;
    var += g.stderr_ * g.stderr_;
  }
  out.decomposition.value = sum;
  out.decomposition.stderr_ = std::sqrt(var);
  out.decomposition.samples = per_facet * m;
  out.decomposition.seed = seed;
  out.decomposition.shards = mc::kDefaultShards;

  const int d = p.dim;
  const double vol_ball = ball_volume(d);
  std::vector<double> normals(static_cast<std::size_t>(m) * d);
  std::vector<double> offsets(m);
  for (int j = 0; j < m; ++j) {
    offsets[j] = p.facets[j].offset;
    for (int k = 0; k < d; ++k) normals[static_cast<std::size_t>(j) * d + k] = p.facets[j].normal[k];
  }
  out.rejection = mc::run_sharded(
      samples, mix_seed(seed, 0x51d), [&, d, m, min_off, vol_ball](std::mt19937_64& rng) {
        const std::vector<double> x = mc::ball_point(d, rng);
        double rsq = 0.0;
        for (int k = 0; k < d; ++k) rsq += x[k] * x[k];
        if (rsq <= min_off * min_off) return 0.0;  // inside the inscribed ball
        for (int j = 0; j < m; ++j) {
          double dot = 0.0;
          for (int k = 0; k < d; ++k) dot += normals[static_cast<std::size_t>(j) * d + k] * x[k];
          if (dot > offsets[j]) return vol_ball;  // outside P
        }
        return 0.0;
      });
  return out;
}

std::vector<FacetClass> classify_facets(const Polytope& p, int n, bool double_count) {
  const int d = p.dim;
  const int m = static_cast<int>(p.facets.size());
  std::vector<FacetStats> stats(m);
  double surf_p = 0.0;
  for (int j = 0; j < m; ++j) {
    stats[j] = facet_stats(p.facet_simplex(j));
    surf_p += stats[j].area;
  }
  const double surf_b = sphere_surface(d);
  const double disk = ball_volume(d - 1);
  const double n_eff = double_count ? 2.0 * n : static_cast<double>(n);
  const double exponent = 2.0 / (d - 1);
  const double rho = 0.125 * std::pow(surf_p / surf_b / (4.0 * n_eff), exponent);
  const double upper6 = (16.0 / 7.0) * std::pow(surf_b / disk / n, exponent);

  std::vector<FacetClass> out(m);
  for (int j = 0; j < m; ++j) {
    FacetClass& c = out[j];
    c.facet_id = j;
    c.h = stats[j].h;
    c.r = stats[j].r;
    c.offset_norm = stats[j].offset_norm;
    c.area = stats[j].area;
    c.shallow_threshold = rho;
    c.height_upper = upper6;
    c.offcenter_threshold = kOffCenterFactor * c.r;
    c.is_shallow = c.h <= rho;
    c.is_off_center = c.offset_norm >= c.offcenter_threshold;
    c.cond6 = c.h >= rho && c.h <= upper6;
    c.cond7 = c.offset_norm < c.offcenter_threshold;
    if (c.is_shallow)
      c.label = FacetLabel::kShallow;
    else if (c.is_off_center)
      c.label = FacetLabel::kOffCenter;
    else if (c.cond6 && c.cond7)
      c.label = FacetLabel::kGood;
    else
      c.label = FacetLabel::kOther;
  }
  return out;
}

Lemma7Result lemma7_search(const std::vector<std::vector<double>>& points,
                           const std::vector<double>& weights, double delta,
                           int extra_directions, std::uint64_t seed) {
  if (points.empty() || points.size() != weights.size())
    throw PreconditionViolated("lemma7_search: empty cloud or weight mismatch");
  const int d = static_cast<int>(points[0].size());
  double total = 0.0;
  std::vector<double> cg(d, 0.0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    total += weights[i];
    for (int k = 0; k < d; ++k) cg[k] += weights[i] * points[i][k];
  }
  if (!(total > 0.0)) throw PreconditionViolated("lemma7_search: zero total mass");
  for (int k = 0; k < d; ++k) cg[k] /= total;
  const double cg_norm = linalg::norm(cg);
  if (cg_norm < 1.0 - delta - 1e-9)
    throw PreconditionViolated("lemma7_search: centroid not in a cap of height delta");

  const double threshold = 1.0 - 2.0 * delta;
  auto mass_in_cap = [&](const std::vector<double>& u) {
    double mass = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
      if (linalg::dot(points[i], u) >= threshold) mass += weights[i];
    return mass / total;
  };

  Lemma7Result best;
  best.cap_height = 2.0 * delta;
  best.direction.assign(d, 0.0);
  for (int k = 0; k < d; ++k) best.direction[k] = cg[k] / cg_norm;
  best.mass_fraction = mass_in_cap(best.direction);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < extra_directions; ++i) {
    const std::vector<double> u = mc::sphere_direction(d, rng);
    const double f = mass_in_cap(u);
    if (f > best.mass_fraction) {
      best.mass_fraction = f;
      best.direction = u;
    }
  }
  best.found = best.mass_fraction >= 0.5;
  return best;
}

AuditReport theorem1_audit(const Polytope& p, int n, std::uint64_t samples,
                           std::uint64_t seed) {
  const int d = p.dim;
  AuditReport rep;
  rep.d = d;
  rep.n = n;
  rep.samples = samples;
  rep.seed = seed;

  const double regime = std::pow(512.0 * kPi * d / 7.0, 0.5 * (d - 1));
  rep.in_regime = n >= regime;
  rep.checks.push_back(make_check("regime_n_threshold", n, regime, ">=",
                                  rep.in_regime ? "" : "out of regime"));

  const std::vector<FacetClass> classes = classify_facets(p, n, true);
  double max_h = 0.0, max_r = 0.0, surf_p = 0.0;
  for (const FacetClass& c : classes) {
    max_h = std::max(max_h, c.h);
    max_r = std::max(max_r, c.r);
    surf_p += c.area;
  }
  rep.checks.push_back(make_check("eq5_cap_height", max_h, 0.125, "<="));
  rep.checks.push_back(make_check("eq5_cap_radius", max_r, 0.5, "<="));

  std::vector<int> good;
  double area_good = 0.0;
  for (const FacetClass& c : classes)
    if (c.cond6 && c.cond7) {
      good.push_back(c.facet_id);
      area_good += c.area;
    }
  rep.checks.push_back(
      make_check("eq8_good_surface", area_good, 0.5 * surf_p, ">="));

  // Per-facet umbrella gaps on the good set against the facet-form bound.
  const std::uint64_t per_facet =
      good.empty() ? 0 : std::max<std::uint64_t>(10000, samples / good.size());
  double gap_sum = 0.0, gap_var = 0.0, bound_sum = 0.0, h_area = 0.0;
  double min_centroid_ratio = std::numeric_limits<double>::infinity();
  for (int j : good) {
    const Simplex facet = p.facet_simplex(j);
    const mc::MCEstimate g = umbrella_gap(facet, per_facet, mix_seed(seed, j));
    gap_sum += g.value;
    gap_var += g.stderr_ * g.stderr_;
    const FacetStats s = facet_stats(facet);
    const double cg_sq = linalg::dot(s.cg_facet, s.cg_facet);
    bound_sum += 0.25 * std::sqrt(std::max(0.0, 1.0 - s.r * s.r)) *
                 (1.0 - cg_sq) * s.area;
    h_area += s.h * s.area;
    min_centroid_ratio = std::min(min_centroid_ratio, (1.0 - cg_sq) / s.h);
  }
  const double gap_sigma = std::sqrt(gap_var);
  rep.checks.push_back(make_check("good_facet_umbrella_sum", gap_sum,
                                  bound_sum - 3.0 * gap_sigma, ">=",
                                  "MC, 3 sigma slack"));
  rep.checks.push_back(make_check("centroid_gap_lower_bound",
                                  min_centroid_ratio, std::pow(2.0, -21), ">="));

  const double vol_gap = ball_volume(d) - polytope_volume(p);
  const double chain24 = std::pow(2.0, -24) * h_area;
  rep.checks.push_back(make_check("gap_chain_2pow24", vol_gap, chain24, ">="));
  const double hfactor =
      std::pow(surf_p / (sphere_surface(d) * 8.0 * n), 2.0 / (d - 1));
  const double chain27 = std::pow(2.0, -27) * hfactor * area_good;
  rep.checks.push_back(make_check("gap_chain_2pow27", chain24, chain27, ">="));
  const double chain29 = std::pow(2.0, -29) * hfactor * surf_p;
  rep.checks.push_back(make_check("gap_chain_2pow29", chain27, chain29, ">="));
  const double final_rhs =
      std::pow(2.0, -36) * sphere_surface(d) * std::pow(n, -2.0 / (d - 1));
  rep.checks.push_back(make_check("final_bound_2pow36", vol_gap, final_rhs, ">="));

  rep.overall_pass = true;
  for (const AuditCheck& c : rep.checks) rep.overall_pass &= c.pass;
  return rep;
}

AuditReport upper_bound_audit(const Polytope& p, int n, std::uint64_t samples,
                              std::uint64_t seed) {
  const int d = p.dim;
  AuditReport rep;
  rep.d = d;
  rep.n = n;
  rep.samples = samples;
  rep.seed = seed;

  const double exponent = 2.0 / (d - 1);
  const double ratio = sphere_surface(d) / ball_volume(d - 1);
  rep.checks.push_back(make_check(
      "lemma3_hausdorff", hausdorff_gap(p),
      (16.0 / 7.0) * std::pow(ratio, exponent) * std::pow(n, -exponent), "<="));

  const double vol_gap = ball_volume(d) - polytope_volume(p);
  // (1 - d_H) B is contained in the polytope, so the volume gap is at most
  // vol(B) (1 - (1 - d_H)^d)
  rep.checks.push_back(make_check(
      "eq1_hausdorff_to_volume", vol_gap,
      ball_volume(d) * (1.0 - std::pow(1.0 - hausdorff_gap(p), d)), "<="));
  rep.checks.push_back(make_check(
      "eq3_symmetric_difference", vol_gap,
      (64.0 / 7.0) * kPi * d * std::pow(n, -exponent) * ball_volume(d), "<="));

  const double eq4_regime = std::pow(128.0 * kPi * d / 7.0, 0.5 * (d - 1));
  if (n >= eq4_regime) {
    rep.checks.push_back(make_check("eq4_surface", sphere_surface(d),
                                    2.0 * surface_area(p), "<="));
  }

  const SymmetricDifference sd = symmetric_difference(p, samples, seed);
  const double combined = std::sqrt(sd.decomposition.stderr_ * sd.decomposition.stderr_ +
                                    sd.rejection.stderr_ * sd.rejection.stderr_);
  rep.checks.push_back(make_check(
      "oracle_agreement", std::fabs(sd.decomposition.value - sd.rejection.value),
      3.0 * combined, "<=", "decomposition vs rejection"));

  rep.in_regime = true;
  rep.overall_pass = true;
  for (const AuditCheck& c : rep.checks) rep.overall_pass &= c.pass;
  return rep;
}

double del_bound(int d) {
  if (d < 2) throw OutOfRange("del_bound: requires d >= 2");
  return (32.0 / 7.0) *
         std::pow(sphere_surface(d) / ball_volume(d - 1), 2.0 / (d - 1));
}

std::string audit_to_json(const AuditReport& r) {
  nlohmann::json j;
  j["metadata"] = {{"d", r.d},
                   {"n", r.n},
                   {"samples", r.samples},
                   {"seed", r.seed},
                   {"in_regime", r.in_regime}};
  auto& checks = j["checks"] = nlohmann::json::array();
  for (const AuditCheck& c : r.checks) {
    nlohmann::json cj = {{"name", c.name},     {"lhs", c.lhs},
                         {"rhs", c.rhs},       {"relation", c.relation},
                         {"margin", c.margin}, {"pass", c.pass}};
    if (!c.note.empty()) cj["note"] = c.note;
    checks.push_back(cj);
  }
  j["overall_pass"] = r.overall_pass;
  return j.dump(2);
}

std::string audit_to_csv(const AuditReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "name,lhs,rhs,relation,margin,pass\n";
  for (const AuditCheck& c : r.checks)
    os << c.name << ',' << c.lhs << ',' << c.rhs << ',' << c.relation << ','
       << c.margin << ',' << (c.pass ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace ballgap
