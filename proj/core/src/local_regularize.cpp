#include "planforge/local_regularize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "planforge/error.hpp"
#include "planforge/geometry.hpp"

namespace planforge {
namespace {

// Portable uniform [0, 1); std::uniform_real_distribution differs between
// standard libraries.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t pick_index(std::mt19937_64& rng, std::size_t n) {
  return std::min(n - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)));
}

std::array<Vec2, 3> seed_plus_plus(const std::vector<Vec2>& pts, std::mt19937_64& rng) {
  std::array<Vec2, 3> centers;
  centers[0] = pts[pick_index(rng, pts.size())];
  std::vector<double> d2(pts.size());
  for (int k = 1; k < 3; ++k) {
    double total = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (int j = 0; j < k; ++j) best = std::min(best, (pts[i] - centers[j]).squaredNorm());
      d2[i] = best;
      total += best;
    }
    if (total <= 0.0) {
      centers[k] = pts[pick_index(rng, pts.size())];
      continue;
    }
    double target = uniform01(rng) * total;
    std::size_t chosen = pts.size() - 1;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      target -= d2[i];
      if (target < 0.0 && d2[i] > 0.0) {
        chosen = i;
        break;
      }
    }
    centers[k] = pts[chosen];
  }
  return centers;
}

int nearest(const Vec2& p, const std::array<Vec2, 3>& means) {
  int best = 0;
  double best_d = (p - means[0]).squaredNorm();
  for (int j = 1; j < 3; ++j) {
    const double d = (p - means[j]).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = j;
    }
  }
  return best;
}

// One Lloyd run; false when a cluster empties.
bool lloyd(const std::vector<Vec2>& pts, std::array<Vec2, 3>& means, std::vector<int>& assign,
           std::vector<double>& trace, int& iterations, const RegularizeOptions& opts) {
  assign.assign(pts.size(), 0);
  trace.clear();
  for (iterations = 0; iterations < opts.max_iterations;) {
    double inertia = 0.0;
    std::array<Vec2, 3> sum{Vec2::Zero(), Vec2::Zero(), Vec2::Zero()};
    std::array<std::size_t, 3> count{0, 0, 0};
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const int a = nearest(pts[i], means);
      assign[i] = a;
      inertia += (pts[i] - means[a]).squaredNorm();
      sum[a] += pts[i];
      ++count[a];
    }
    trace.push_back(inertia);
    ++iterations;
    if (count[0] == 0 || count[1] == 0 || count[2] == 0) return false;
    double shift = 0.0;
    for (int j = 0; j < 3; ++j) {
      const Vec2 m = sum[j] / static_cast<double>(count[j]);
      shift = std::max(shift, (m - means[j]).norm());
      means[j] = m;
    }
    if (shift < opts.lloyd_tol) break;
  }
  for (std::size_t i = 0; i < pts.size(); ++i) assign[i] = nearest(pts[i], means);
  return true;
}

double final_inertia(const std::vector<Vec2>& pts, const ClusterResult& c) {
  double sum = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) sum += (pts[i] - c.means[c.assignments[i]]).squaredNorm();
  return sum;
}

double angle_at(const Vec2& at, const Vec2& a, const Vec2& b) {
  const Vec2 u = a - at;
  const Vec2 v = b - at;
  return std::atan2(std::abs(geom::cross(u, v)), u.dot(v));
}

}  // namespace

PointSet2D extract_boundary(const PointSet2D& points, double eps) {
  if (points.size() < 3) throw GeometryError("local_regularize", "degenerate capture: fewer than 3 points");
  const std::vector<Vec2> hull = geom::convex_hull(points.points);
  if (hull.size() < 3) throw GeometryError("local_regularize", "degenerate capture: points are collinear");

  PointSet2D out;
  for (const Vec2& p : points.points) {
    if (geom::nearest_edge(p, hull).distance <= eps) out.points.push_back(p);
  }
  return out;
}

ClusterResult cluster3(const PointSet2D& points, std::uint64_t seed, const RegularizeOptions& opts) {
  if (points.size() < 3) throw GeometryError("local_regularize", "cluster collapse: fewer than 3 points");
  const std::vector<Vec2>& pts = points.points;

  // Independent k-means++ runs; the lowest final inertia wins. A run whose
  // cluster empties is re-seeded, up to max_reseeds times.
  ClusterResult r;
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t stream = 0;
  for (int run = 0; run < std::max(1, opts.restarts); ++run) {
    ClusterResult cand;
    bool ok = false;
    for (int attempt = 0; attempt <= opts.max_reseeds && !ok; ++attempt, ++stream) {
      std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ull * stream);
      std::array<Vec2, 3> means = seed_plus_plus(pts, rng);
      ok = lloyd(pts, means, cand.assignments, cand.inertia_trace, cand.iterations, opts);
      cand.means = means;
    }
    if (!ok) throw GeometryError("local_regularize", "cluster collapse");
    const double inertia = final_inertia(pts, cand);
    if (inertia < best) {
      best = inertia;
      r = std::move(cand);
    }
  }

  // Order as (m1, apex, m3).
  std::array<int, 3> order{0, 1, 2};
  int apex = 0;
  double widest = -1.0;
  for (int j = 0; j < 3; ++j) {
    const double a = angle_at(r.means[j], r.means[(j + 1) % 3], r.means[(j + 2) % 3]);
    if (a > widest) {
      widest = a;
      apex = j;
    }
  }
  int first = (apex + 1) % 3;
  int last = (apex + 2) % 3;
  if (geom::cross(r.means[apex] - r.means[first], r.means[last] - r.means[apex]) < 0.0) std::swap(first, last);
  order = {first, apex, last};

  std::array<int, 3> remap{};
  std::array<Vec2, 3> sorted;
  for (int k = 0; k < 3; ++k) {
    sorted[k] = r.means[order[k]];
    remap[order[k]] = k;
  }
  r.means = sorted;
  for (int& a : r.assignments) a = remap[a];
  return r;
}

Wedge fit_wedge(const ClusterResult& c) {
  const Vec2& m1 = c.means[0];
  const Vec2& m2 = c.means[1];
  const Vec2& m3 = c.means[2];
  if (m1 == m2 || m2 == m3) throw GeometryError("local_regularize", "degenerate means");

  Wedge w;
  w.apex = m2;
  w.len1 = (m2 - m1).norm();
  w.dir1 = (m2 - m1) / w.len1;
  const Vec2 second = m3 - m2;
  w.len2 = second.norm();
  const Vec2 ccw = geom::perp_ccw(w.dir1);
  w.dir2 = second.dot(ccw) >= 0.0 ? ccw : geom::perp_cw(w.dir1);
  return w;
}

Wedge fit_wedge_least_squares(const ClusterResult& c, const PointSet2D& points) {
  auto principal = [&](int cluster, Vec2& centroid) {
    centroid = Vec2::Zero();
    std::size_t n = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (c.assignments[i] == cluster) {
        centroid += points.points[i];
        ++n;
      }
    }
    if (n < 2) throw GeometryError("local_regularize", "degenerate means");
    centroid /= static_cast<double>(n);
    Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (c.assignments[i] == cluster) {
        const Vec2 d = points.points[i] - centroid;
        cov += d * d.transpose();
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(cov);
    return Vec2(eig.eigenvectors().col(1));
  };

  Vec2 c1, c3;
  Vec2 d1 = principal(0, c1);
  principal(2, c3);
  // Orient d1 towards the apex side, then intersect line 1 with the
  // perpendicular line through c3.
  if (d1.dot(c.means[1] - c1) < 0.0) d1 = -d1;
  const Vec2 n1 = geom::perp_ccw(d1);
  const double along = (c3 - c1).dot(d1);
  const Vec2 apex = c1 + along * d1;
  if ((apex - c1).norm() == 0.0 || (c3 - apex).norm() == 0.0) {
    throw GeometryError("local_regularize", "degenerate means");
  }
  Wedge w;
  w.apex = apex;
  w.dir1 = d1;
  w.len1 = (apex - c1).norm();
  w.dir2 = (c3 - apex).dot(n1) >= 0.0 ? n1 : Vec2(-n1);
  w.len2 = (c3 - apex).norm();
  return w;
}

Wedge place_wedge(const Wedge& w, const PlanTransform& xform) {
  Wedge out = w;
  out.apex = xform.apply(w.apex);
  out.dir1 = xform.rotate(w.dir1).normalized();
  // Rebuild dir2 from dir1 so perpendicularity survives rounding.
  out.dir2 = geom::cross(w.dir1, w.dir2) >= 0.0 ? geom::perp_ccw(out.dir1) : geom::perp_cw(out.dir1);
  return out;
}

Wedge regularize_capture(const PointSet2D& local_points, std::uint64_t seed, const RegularizeOptions& opts) {
  const PointSet2D boundary = extract_boundary(local_points, opts.hull_eps);
  const ClusterResult clusters = cluster3(boundary, seed, opts);
  return opts.least_squares_lines ? fit_wedge_least_squares(clusters, boundary) : fit_wedge(clusters);
}

}  // namespace planforge
