#pragma once

#include <span>
#include <string>
#include <vector>

#include "planforge/types.hpp"

namespace planforge {

struct AssembleOptions {
  double snap_angle_deg = 5.0;    // corners off by more than this are reported as forced
  double max_group_spread = 0.5;  // meters between wall lines that describe the same wall
  double snap_dist = 0.3;         // meters; boundary alignment reach
  double overlap_tolerance = 1e-6;  // square meters of tolerated room intersection
};

// Dominant wall direction of a set of wedges, folded into (-pi/4, pi/4].
double estimate_manhattan_axis(std::span<const Wedge> wedges);

// Rectangle from four corner wedges already placed in the plan frame. Each
// wedge wall is snapped to the nearest of {axis, axis + 90deg}; per axis the
// walls split into two groups whose mean offsets give the rectangle's sides.
RoomPolygon assemble_room(std::span<const Wedge> wedges, std::string id, double axis,
                          const AssembleOptions& opts = {});

struct SnapReport {
  int merged_vertices = 0;  // near-straight vertices folded into one wall
  int forced_corners = 0;   // corners that were more than snap_angle_deg off square
};

// Snaps every edge to the nearest of {axis, axis + 90deg}, folds runs of
// parallel edges into one wall (length-weighted offset), and rebuilds the
// vertices by intersecting consecutive walls. Already-Manhattan polygons are
// returned unchanged, so the operation is idempotent.
RoomPolygon snap_manhattan(const RoomPolygon& poly, double axis, const AssembleOptions& opts = {},
                           SnapReport* report = nullptr);

BoundaryPolygon boundary_hull(std::span<const RoomPolygon> rooms);

enum class Containment { inside, outside };

// Ray-cast parity along +x with the half-open vertex rule; points within
// edge_eps of an edge are inside.
Containment point_in_boundary(const Vec2& p, const BoundaryPolygon& boundary, double edge_eps = 1e-9);

// Foot of the perpendicular from p onto the infinite line through a and b.
Vec2 perpendicular_foot(const Vec2& p, const Vec2& a, const Vec2& b);

// Moves inside vertices within snap_dist of a boundary edge onto that edge
// (foot clamped to the segment), then re-snaps to Manhattan about axis.
RoomPolygon align_to_boundary(const RoomPolygon& room, const BoundaryPolygon& boundary, double snap_dist,
                              double axis, const AssembleOptions& opts = {});

// Rectangular rooms whose facing walls are within max_gap of each other (gap
// or overlap) get a common wall on the midline.
std::vector<RoomPolygon> reconcile_shared_walls(std::vector<RoomPolygon> rooms, double axis, double max_gap);

// Exact intersection area of two rectilinear polygons whose edges follow axis.
double rectilinear_overlap_area(const RoomPolygon& a, const RoomPolygon& b, double axis);

FloorPlan build_floorplan(std::vector<RoomPolygon> rooms, BoundaryPolygon boundary, std::vector<DoorPlacement> doors,
                          double axis, const AssembleOptions& opts = {});

// Long side over short side of the polygon's axis-aligned extent.
double aspect_ratio(const RoomPolygon& room, double axis);

}  // namespace planforge
