#pragma once

#include <span>
#include <vector>

#include "planforge/types.hpp"

namespace planforge::geom {

inline double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// (a - o) x (b - o); positive for a left turn o -> a -> b.
inline double orient(const Vec2& o, const Vec2& a, const Vec2& b) { return cross(a - o, b - o); }

inline Vec2 perp_ccw(const Vec2& v) { return {-v.y(), v.x()}; }
inline Vec2 perp_cw(const Vec2& v) { return {v.y(), -v.x()}; }

Vec2 rotate(const Vec2& p, double angle);

// Wraps into (-pi, pi].
double wrap_angle(double a);

double signed_area(std::span<const Vec2> poly);
double polygon_area(std::span<const Vec2> poly);

Vec2 closest_point_on_segment(const Vec2& p, const Vec2& a, const Vec2& b);
double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);

// Distance to the nearest edge of a closed polygon, and that edge's index.
struct NearestEdge {
  std::size_t index = 0;
  double distance = 0.0;
};
NearestEdge nearest_edge(const Vec2& p, std::span<const Vec2> poly);

// Andrew's monotone chain. Counter-clockwise, no collinear vertices, first
// vertex is the lowest-x (then lowest-y) point.
std::vector<Vec2> convex_hull(std::span<const Vec2> points);

// True when the polygon has no two non-adjacent edges touching.
bool is_simple(std::span<const Vec2> poly);
bool is_convex(std::span<const Vec2> poly);

// Interior angle at each vertex of a counter-clockwise polygon, in [0, 2pi).
std::vector<double> interior_angles(std::span<const Vec2> poly);

// Proper or touching intersection of closed segments.
bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);

}  // namespace planforge::geom
