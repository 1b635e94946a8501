#include "ballgap/hull.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "ballgap/linalg.hpp"
#include "json.hpp"

namespace ballgap {
namespace {

constexpr double kDuplicateTol = 1e-10;
constexpr double kPerturbation = 1e-10;
constexpr std::uint64_t kPerturbSeed = 0xb4119470ull;

// Internal signal: float predicates disagreed, caller may retry perturbed.
struct Inconsistent : std::runtime_error {
  explicit Inconsistent(const std::string& m) : std::runtime_error(m) {}
};

struct RidgeHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b9;
      h *= 1099511628211ull;
    }
    return h;
  }
};

struct RidgePair {
  int first = -1;
  int second = -1;
};

struct BFacet {
  std::vector<int> verts;  // sorted
  std::vector<double> normal;
  double offset = 0.0;
  std::vector<int> conflicts;  // unprocessed points strictly beyond
  bool alive = true;
};

class Builder {
 public:
  Builder(const std::vector<std::vector<double>>& pts, int d)
      : pts_(pts), d_(d), point_conflicts_(pts.size()) {}

  void run() {
    pick_initial_simplex();
    for (int i = 0; i <= d_; ++i) {
      std::vector<int> verts;
      for (int j = 0; j <= d_; ++j)
        if (j != i) verts.push_back(simplex_[j]);
      const int fid = make_facet(verts);
      for (std::size_t p = 0; p < pts_.size(); ++p)
        if (!processed_[p]) try_conflict(fid, static_cast<int>(p));
    }
    for (std::size_t p = 0; p < pts_.size(); ++p) {
      if (processed_[p]) continue;
      insert(static_cast<int>(p));
      processed_[p] = true;
    }
    validate();
  }

  std::vector<BFacet> take_alive_facets() {
    std::vector<BFacet> out;
    for (BFacet& f : facets_)
      if (f.alive) out.push_back(std::move(f));
    return out;
  }

  int ridge_count() const { return static_cast<int>(ridges_.size()); }

 private:
  void pick_initial_simplex() {
    const std::size_t m = pts_.size();
    processed_.assign(m, false);
    simplex_.clear();
    simplex_.push_back(0);
    // Greedy affinely independent set: orthonormal basis of difference
    // vectors, each step takes the point with the largest residual.
    std::vector<std::vector<double>> basis;
    while (static_cast<int>(simplex_.size()) <= d_) {
      int best = -1;
      double best_res = 0.0;
      std::vector<double> best_dir;
      for (std::size_t p = 0; p < m; ++p) {
        if (std::find(simplex_.begin(), simplex_.end(), static_cast<int>(p)) != simplex_.end())
          continue;
        std::vector<double> diff(d_);
        for (int k = 0; k < d_; ++k) diff[k] = pts_[p][k] - pts_[simplex_[0]][k];
        for (const auto& b : basis) {
          const double proj = linalg::dot(diff, b);
          for (int k = 0; k < d_; ++k) diff[k] -= proj * b[k];
        }
        const double res = linalg::norm(diff);
        if (res > best_res) {
          best_res = res;
          best = static_cast<int>(p);
          best_dir = diff;
        }
      }
      if (best < 0 || best_res < kEpsHull)
        throw DegenerateInput("convex_hull: affine rank below dimension");
      for (int k = 0; k < d_; ++k) best_dir[k] /= best_res;
      basis.push_back(std::move(best_dir));
      simplex_.push_back(best);
    }
    interior_.assign(d_, 0.0);
    for (int id : simplex_)
      for (int k = 0; k < d_; ++k) interior_[k] += pts_[id][k] / (d_ + 1);
    for (int id : simplex_) processed_[id] = true;
  }

  int make_facet(std::vector<int> verts) {
    std::sort(verts.begin(), verts.end());
    std::vector<std::vector<double>> fpts;
    double scale = 1.0;
    for (int id : verts) fpts.push_back(pts_[id]);
    for (std::size_t i = 1; i < fpts.size(); ++i) {
      std::vector<double> diff(d_);
      for (int k = 0; k < d_; ++k) diff[k] = fpts[i][k] - fpts[0][k];
      scale *= linalg::norm(diff);
    }
    std::vector<double> n = linalg::affine_normal(fpts);
    const double nn = linalg::norm(n);
    if (nn < kEpsHull * scale) throw Inconsistent("degenerate facet plane");
    double offset = 0.0;
    for (int k = 0; k < d_; ++k) n[k] /= nn;
    for (const auto& v : fpts) offset += linalg::dot(n, v) / d_;
    const double side = offset - linalg::dot(n, interior_);
    if (std::fabs(side) < 1e-12) throw Inconsistent("facet plane hits interior point");
    if (side < 0.0) {
      for (int k = 0; k < d_; ++k) n[k] = -n[k];
      offset = -offset;
    }
    BFacet f;
    f.verts = std::move(verts);
    f.normal = std::move(n);
    f.offset = offset;
    const int fid = static_cast<int>(facets_.size());
    facets_.push_back(std::move(f));
    register_ridges(fid);
    return fid;
  }

  void register_ridges(int fid) {
    const BFacet& f = facets_[fid];
    std::vector<int> key(d_ - 1);
    for (int drop = 0; drop < d_; ++drop) {
      int c = 0;
      for (int i = 0; i < d_; ++i)
        if (i != drop) key[c++] = f.verts[i];
      auto& slot = ridges_[key];
      if (slot.first < 0)
        slot.first = fid;
      else if (slot.second < 0)
        slot.second = fid;
      else
        throw Inconsistent("ridge with three incident facets");
    }
  }

  void drop_facet(int fid) {
    BFacet& f = facets_[fid];
    f.alive = false;
    std::vector<int> key(d_ - 1);
    for (int drop = 0; drop < d_; ++drop) {
      int c = 0;
      for (int i = 0; i < d_; ++i)
        if (i != drop) key[c++] = f.verts[i];
      auto it = ridges_.find(key);
      if (it == ridges_.end()) continue;
      if (it->second.first == fid) std::swap(it->second.first, it->second.second);
      if (it->second.second == fid) it->second.second = -1;
      if (it->second.first < 0) ridges_.erase(it);
    }
    f.conflicts.clear();
    f.conflicts.shrink_to_fit();
  }

  double dist(int fid, int p) const {
    return linalg::dot(facets_[fid].normal, pts_[p]) - facets_[fid].offset;
  }

  void try_conflict(int fid, int p) {
    if (dist(fid, p) > kEpsHull) {
      facets_[fid].conflicts.push_back(p);
      point_conflicts_[p].push_back(fid);
    }
  }

  void insert(int p) {
    std::vector<int> visible;
    for (int fid : point_conflicts_[p])
      if (facets_[fid].alive) visible.push_back(fid);
    std::sort(visible.begin(), visible.end());
    visible.erase(std::unique(visible.begin(), visible.end()), visible.end());
    point_conflicts_[p].clear();
    point_conflicts_[p].shrink_to_fit();
    if (visible.empty()) return;  // interior or coplanar; validate() decides

    std::unordered_set<int> vis(visible.begin(), visible.end());
    // Horizon: ridges with exactly one incident visible facet.
    std::vector<std::pair<std::vector<int>, int>> horizon;  // (ridge, neighbor)
    std::vector<int> key(d_ - 1);
    for (int fid : visible) {
      const BFacet& f = facets_[fid];
      for (int drop = 0; drop < d_; ++drop) {
        int c = 0;
        for (int i = 0; i < d_; ++i)
          if (i != drop) key[c++] = f.verts[i];
        auto it = ridges_.find(key);
        if (it == ridges_.end() || it->second.second < 0)
          throw Inconsistent("open ridge during insertion");
        const int other = (it->second.first == fid) ? it->second.second : it->second.first;
        if (vis.count(other) == 0) horizon.emplace_back(key, other);
      }
    }
    if (horizon.empty()) throw Inconsistent("point sees no horizon");

    // Candidate points for the new facets: everything the replaced cone or
    // its horizon neighbors could see.
    std::unordered_set<int> cand;
    for (int fid : visible)
      for (int q : facets_[fid].conflicts)
        if (q > p && !processed_[q]) cand.insert(q);
    for (const auto& [ridge, nb] : horizon)
      for (int q : facets_[nb].conflicts)
        if (q > p && !processed_[q]) cand.insert(q);

    for (int fid : visible) drop_facet(fid);

    for (const auto& [ridge, nb] : horizon) {
      std::vector<int> verts = ridge;
      verts.push_back(p);
      const int fid = make_facet(std::move(verts));
      for (int q : cand) try_conflict(fid, q);
    }
  }

  void validate() {
    for (const auto& [key, pair] : ridges_)
      if (pair.first < 0 || pair.second < 0)
        throw Inconsistent("ridge without two incident facets");
    std::vector<char> used(pts_.size(), 0);
    for (const BFacet& f : facets_) {
      if (!f.alive) continue;
      for (int id : f.verts) used[id] = 1;
      for (std::size_t p = 0; p < pts_.size(); ++p)
        if (dist_to(f, static_cast<int>(p)) > kEpsHull)
          throw Inconsistent("point beyond final hull facet");
    }
    // All inputs are unit vectors, so every merged point must be a vertex.
    for (std::size_t p = 0; p < pts_.size(); ++p)
      if (!used[p]) throw Inconsistent("input point dropped from hull");
  }

  double dist_to(const BFacet& f, int p) const {
    return linalg::dot(f.normal, pts_[p]) - f.offset;
  }

  const std::vector<std::vector<double>>& pts_;
  int d_;
  std::vector<int> simplex_;
  std::vector<double> interior_;
  std::vector<char> processed_;
  std::vector<BFacet> facets_;
  std::unordered_map<std::vector<int>, RidgePair, RidgeHash> ridges_{16, RidgeHash{}};
  std::vector<std::vector<int>> point_conflicts_;
};

Polytope assemble(const std::vector<SpherePoint>& merged,
                  const std::vector<std::vector<double>>& coords, int d,
                  bool perturbed) {
  Builder b(coords, d);
  b.run();
  Polytope out;
  out.dim = d;
  out.vertices = merged;
  out.ridge_count = b.ridge_count();
  out.perturbed = perturbed;
  for (BFacet& f : b.take_alive_facets()) {
    HullFacet hf;
    hf.vertex_ids = std::move(f.verts);
    hf.normal = std::move(f.normal);
    hf.offset = f.offset;
    out.facets.push_back(std::move(hf));
  }
  return out;
}

}  // namespace

Simplex Polytope::facet_simplex(int j) const {
  std::vector<SpherePoint> v;
  for (int id : facets[j].vertex_ids) v.push_back(vertices[id]);
  return Simplex(std::move(v));
}

double Polytope::min_offset() const {
  double lo = 1.0;
  for (const HullFacet& f : facets) lo = std::min(lo, f.offset);
  return lo;
}

Polytope convex_hull(const std::vector<SpherePoint>& points) {
  if (points.empty()) throw TooFewPoints("convex_hull: no points");
  const int d = points[0].dim();
  for (const SpherePoint& p : points)
    if (p.dim() != d) throw DegenerateInput("convex_hull: mixed dimensions");

  // Merge duplicates closer than 1e-10.
  std::vector<SpherePoint> merged;
  for (const SpherePoint& p : points) {
    bool dup = false;
    for (const SpherePoint& q : merged) {
      double dsq = 0.0;
      for (int k = 0; k < d; ++k) {
        const double diff = p[k] - q[k];
        dsq += diff * diff;
      }
      if (dsq < kDuplicateTol * kDuplicateTol) {
        dup = true;
        break;
      }
    }
    if (!dup) merged.push_back(p);
  }
  if (static_cast<int>(merged.size()) < d + 1)
    throw TooFewPoints("convex_hull: need at least d+1 distinct points");

  std::vector<std::vector<double>> coords;
  for (const SpherePoint& p : merged) coords.push_back(p.coords());
  try {
    return assemble(merged, coords, d, false);
  } catch (const Inconsistent&) {
    // Deterministic tangential jitter, renormalized so points stay on the
    // sphere, then one rebuild.
    std::mt19937_64 rng(kPerturbSeed + merged.size());
    std::uniform_real_distribution<double> u(-kPerturbation, kPerturbation);
    std::vector<SpherePoint> jittered;
    for (const SpherePoint& p : merged) {
      std::vector<double> c = p.coords();
      for (int k = 0; k < d; ++k) c[k] += u(rng);
      jittered.emplace_back(std::move(c));
    }
    std::vector<std::vector<double>> jcoords;
    for (const SpherePoint& p : jittered) jcoords.push_back(p.coords());
    try {
      return assemble(jittered, jcoords, d, true);
    } catch (const Inconsistent& e) {
      throw NumericalFailure(std::string("convex_hull: ") + e.what());
    }
  }
}

double polytope_volume(const Polytope& p) {
  if (p.min_offset() <= 0.0)
    throw OriginNotInterior("polytope_volume: origin not strictly interior");
  double vol = 0.0;
  for (std::size_t j = 0; j < p.facets.size(); ++j)
    vol += std::fabs(p.facet_simplex(static_cast<int>(j)).det_x());
  double fact = 1.0;
  for (int i = 2; i <= p.dim; ++i) fact *= i;
  return vol / fact;
}

double surface_area(const Polytope& p) {
  double area = 0.0;
  for (std::size_t j = 0; j < p.facets.size(); ++j)
    area += facet_stats(p.facet_simplex(static_cast<int>(j))).area;
  return area;
}

std::string polytope_to_json(const Polytope& p) {
  nlohmann::json j;
  j["dimension"] = p.dim;
  auto& verts = j["vertices"] = nlohmann::json::array();
  for (const SpherePoint& v : p.vertices) verts.push_back(v.coords());
  auto& facets = j["facets"] = nlohmann::json::array();
  for (const HullFacet& f : p.facets) facets.push_back(f.vertex_ids);
  j["perturbed"] = p.perturbed;
  j["ridge_count"] = p.ridge_count;
  return j.dump(2);
}

Polytope polytope_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  Polytope p;
  p.dim = j.at("dimension").get<int>();
  for (const auto& v : j.at("vertices"))
    p.vertices.emplace_back(v.get<std::vector<double>>());
  p.perturbed = j.value("perturbed", false);
  p.ridge_count = j.value("ridge_count", 0);
  // Centroid of the vertices orients the reconstructed normals outward.
  std::vector<double> centroid(p.dim, 0.0);
  for (const SpherePoint& v : p.vertices)
    for (int k = 0; k < p.dim; ++k) centroid[k] += v[k] / p.vertices.size();
  for (const auto& ids : j.at("facets")) {
    HullFacet f;
    f.vertex_ids = ids.get<std::vector<int>>();
    if (static_cast<int>(f.vertex_ids.size()) != p.dim)
      throw DegenerateInput("polytope_from_json: facet arity != dimension");
    std::vector<std::vector<double>> fpts;
    for (int id : f.vertex_ids) {
      if (id < 0 || id >= static_cast<int>(p.vertices.size()))
        throw DegenerateInput("polytope_from_json: facet index out of range");
      fpts.push_back(p.vertices[id].coords());
    }
    std::vector<double> n = linalg::affine_normal(fpts);
    const double nn = linalg::norm(n);
    if (nn <= 0.0) throw DegenerateInput("polytope_from_json: degenerate facet");
    for (double& c : n) c /= nn;
    double offset = linalg::dot(n, fpts[0]);
    if (offset - linalg::dot(n, centroid) < 0.0) {
      for (double& c : n) c = -c;
      offset = -offset;
    }
    f.normal = std::move(n);
    f.offset = offset;
    p.facets.push_back(std::move(f));
  }
  return p;
}

}  // namespace ballgap
