#pragma once

#include <cstdint>

#include "planforge/types.hpp"

namespace planforge {

struct RegularizeOptions {
  double hull_eps = 0.02;      // meters; points this close to a hull edge count as boundary
  double lloyd_tol = 1e-6;     // meters of mean shift
  int max_iterations = 100;
  int max_reseeds = 5;
  int restarts = 8;  // independent seedings; the lowest final inertia is kept
  bool least_squares_lines = false;  // fit wall lines through cluster members instead of joining means
};

// Convex hull vertices plus every input point within eps of a hull edge, in
// input order. Throws GeometryError("degenerate capture") when the points do
// not span an area.
PointSet2D extract_boundary(const PointSet2D& points, double eps = 0.02);

// k-means with k = 3, k-means++ seeding from `seed`, best of opts.restarts runs. The means come back
// ordered (m1, apex, m3): the apex has the widest angle to the other two and
// m1 -> apex -> m3 turns counter-clockwise.
ClusterResult cluster3(const PointSet2D& points, std::uint64_t seed, const RegularizeOptions& opts = {});

// Keeps m1 -> apex fixed and turns apex -> m3 about the apex by the smallest
// angle that makes the two walls perpendicular (ties go counter-clockwise).
Wedge fit_wedge(const ClusterResult& clusters);

// Variant that fits total-least-squares lines through the members of the two
// outer clusters and intersects them for the apex.
Wedge fit_wedge_least_squares(const ClusterResult& clusters, const PointSet2D& points);

Wedge place_wedge(const Wedge& wedge, const PlanTransform& xform);

// boundary -> cluster3 -> fit_wedge on points already in the capture's local
// plan frame.
Wedge regularize_capture(const PointSet2D& local_points, std::uint64_t seed, const RegularizeOptions& opts = {});

}  // namespace planforge
