#pragma once

// Data behind the single-qubit pictures: the relative entropy of magic over
// the pure states above facet (+++), ray polylines, and the symmetry checks
// run on that grid.

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "relmagic/bloch.hpp"
#include "relmagic/errors.hpp"
#include "relmagic/family.hpp"
#include "relmagic/optim.hpp"

namespace relmagic {

inline const Vec3& t_direction() {
  static const Vec3 t{1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)};
  return t;
}

inline double angle_between(const Vec3& a, const Vec3& b) { return std::atan2(norm(cross(a, b)), dot(a, b)); }

struct HeatmapSample {
  std::array<int, 3> index{};  // barycentric grid index, sums to resolution
  Vec3 direction{};            // pure state on the Bloch sphere
  double value = 0.0;          // bits
  Vec3 sigma{};                // closest stabilizer state
  std::string face;            // facet, edge or vertex holding sigma
  double angle_from_t = 0.0;
};

struct HeatmapSummary {
  int argmax = -1;
  double max_value = 0.0;
  double max_angle_from_t = 0.0;     // of the argmax sample
  double permutation_residual = 0.0; // max |R(p) - R(perm p)| over the grid
  double radial_spread = 0.0;        // max spread of R over equal-angle bins around T
  int radial_bins = 0;
};

inline std::string face_name(const Vec3& x) {
  const BlochVector b(x);
  if (octahedron_membership(b) != Membership::boundary) return "interior";
  const auto where = classify_boundary(b);
  if (std::holds_alternative<FacetPoint>(where)) return "facet";
  if (std::holds_alternative<EdgePoint>(where)) return "edge";
  return "vertex";
}

inline HeatmapSample heatmap_sample(int i, int j, int k) {
  const Vec3 w{double(i), double(j), double(k)};
  HeatmapSample s;
  s.index = {i, j, k};
  s.direction = (1.0 / norm(w)) * w;
  const auto c = closest_stabilizer_1q(BlochVector(s.direction));
  s.value = c.value;
  s.sigma = c.sigma.x;
  s.face = face_name(c.sigma.x);
  s.angle_from_t = angle_between(s.direction, t_direction());
  return s;
}

// Pure states whose directions lie in the spherical triangle over facet (+++),
// on the barycentric grid (i, j, k) / resolution. This covers the facet rays
// and the edge rays with -b <= c <= 0 that end above the facet. When the grid
// misses the T direction it is appended with index (-1, -1, -1).
inline std::vector<HeatmapSample> facet_heatmap(int resolution) {
  if (resolution < 8) throw InvalidInput("facet_heatmap: resolution must be at least 8");
  std::vector<HeatmapSample> out;
  for (int i = resolution; i >= 0; --i)
    for (int j = resolution - i; j >= 0; --j) out.push_back(heatmap_sample(i, j, resolution - i - j));
  if (resolution % 3) {
    auto t = heatmap_sample(1, 1, 1);
    t.index = {-1, -1, -1};
    out.push_back(t);
  }
  return out;
}

inline HeatmapSummary summarize_heatmap(const std::vector<HeatmapSample>& grid, int resolution) {
  HeatmapSummary s;
  std::map<std::array<int, 3>, double> by_index;
  for (std::size_t n = 0; n < grid.size(); ++n) {
    by_index[grid[n].index] = grid[n].value;
    if (s.argmax < 0 || grid[n].value > s.max_value) {
      s.argmax = static_cast<int>(n);
      s.max_value = grid[n].value;
    }
  }
  s.max_angle_from_t = grid[s.argmax].angle_from_t;

  const std::array<std::array<int, 3>, 6> perms = {{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (const auto& g : grid)
    for (const auto& p : perms) {
      const std::array<int, 3> q{g.index[p[0]], g.index[p[1]], g.index[p[2]]};
      s.permutation_residual = std::max(s.permutation_residual, std::abs(g.value - by_index.at(q)));
    }

  // Equal-angle bins around T, width set by the grid spacing.
  const double width = std::acos(1.0 / std::sqrt(3.0)) / resolution;
  std::map<long, std::pair<double, double>> bins;
  for (const auto& g : grid) {
    const long b = std::lround(g.angle_from_t / width);
    auto [it, fresh] = bins.try_emplace(b, g.value, g.value);
    if (!fresh) {
      it->second.first = std::min(it->second.first, g.value);
      it->second.second = std::max(it->second.second, g.value);
    }
  }
  for (const auto& [b, mm] : bins) s.radial_spread = std::max(s.radial_spread, mm.second - mm.first);
  s.radial_bins = static_cast<int>(bins.size());
  return s;
}

// R along the great circle from the T direction to vertex s_(axis+1), excluding
// the vertex itself.
inline std::vector<std::pair<double, double>> great_circle_profile(int axis, int points) {
  if (points < 2) throw InvalidInput("great_circle_profile: need at least two points");
  Vec3 v{};
  v[axis] = 1.0;
  const Vec3& t = t_direction();
  const double total = angle_between(t, v);
  const Vec3 perp = (1.0 / norm(v - dot(v, t) * t)) * (v - dot(v, t) * t);
  std::vector<std::pair<double, double>> out;
  for (int k = 0; k < points; ++k) {
    const double a = total * k / points;
    const Vec3 x = std::cos(a) * t + std::sin(a) * perp;
    out.emplace_back(a, closest_stabilizer_1q(BlochVector(x)).value);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ray polylines.

struct RayPolyline {
  std::string face;   // facet or edge id
  double c = 0.0;     // edge hyperplane parameter (0 for facets)
  MagicRay ray;
  std::vector<std::pair<double, Vec3>> points;  // (t, x_rho(t))
  std::optional<double> t_max_printed;
};

inline RayPolyline sample_ray(const std::string& face, double c, const MagicRay& ray, int steps, bool printed_t) {
  RayPolyline p{face, c, ray, {}, std::nullopt};
  for (int k = 0; k <= steps; ++k) {
    const double t = k == steps ? ray.t_max : ray.t_max * k / steps;
    p.points.emplace_back(t, ray.at(t).x);
  }
  if (printed_t) p.t_max_printed = t_max_paper_verbatim(ray.sigma, ray.phi);
  return p;
}

// Sources on a facet: the interior points of the barycentric grid (i, j, k) / resolution,
// plus the centroid when the grid misses it.
inline std::vector<RayPolyline> facet_rays(const FacetId& f, int resolution, int steps, bool printed_t) {
  if (resolution < 2) throw InvalidInput("facet_rays: resolution must be at least 2");
  std::vector<RayPolyline> out;
  auto add = [&](double a, double b, double c) {
    const Vec3 x{f.signs[0] * a, f.signs[1] * b, f.signs[2] * c};
    out.push_back(sample_ray(f.name(), 0.0, facet_ray(BlochVector(x)), steps, printed_t));
  };
  if (resolution % 3) add(1.0 / 3, 1.0 / 3, 1.0 / 3);
  const double n = resolution;
  for (int i = 1; i < resolution; ++i)
    for (int j = 1; i + j < resolution; ++j) add(i / n, j / n, (resolution - i - j) / n);
  return out;
}

inline std::vector<RayPolyline> edge_rays(const EdgeId& e, const std::vector<double>& cs, int resolution, int steps,
                                          bool printed_t) {
  if (resolution < 2) throw InvalidInput("edge_rays: resolution must be at least 2");
  std::vector<RayPolyline> out;
  for (double c : cs)
    for (int k = 1; k < resolution; ++k) {
      const double w = double(k) / resolution;
      const Vec3 x = w * e.a.bloch() + (1.0 - w) * e.b.bloch();
      out.push_back(sample_ray(e.name(), c, edge_ray(BlochVector(x), c), steps, printed_t));
    }
  return out;
}

}  // namespace relmagic
