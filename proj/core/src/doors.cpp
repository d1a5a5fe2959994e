#include "planforge/doors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "planforge/error.hpp"
#include "planforge/geometry.hpp"

namespace planforge {

double door_ratio(const DoorBox& box) {
  box.validate();
  const double c = box.centroid_u();
  if (!(c > box.u_left && c < box.u_right)) {
    throw GeometryError("doors", fmt::format("door outside wall: centroid u={} not within ({}, {})", c, box.u_left,
                                             box.u_right));
  }
  return (c - box.u_left) / (box.u_right - box.u_left);
}

double door_width_from_box(const DoorBox& box, double wall_length) {
  box.validate();
  return wall_length * (box.u_max - box.u_min) / (box.u_right - box.u_left);
}

DoorPlacement place_door(double ratio, const RoomPolygon& room, int wall_index, double width) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw GeometryError("doors", fmt::format("door ratio {} outside (0, 1)", ratio));
  if (wall_index < 0 || static_cast<std::size_t>(wall_index) >= room.size()) {
    throw InputError("doors", fmt::format("room {} has no wall {}", room.id(), wall_index));
  }
  const double len = room.wall_length(static_cast<std::size_t>(wall_index));
  if (!(width > 0.0 && width < len)) {
    throw GeometryError("doors", fmt::format("door width {} does not fit wall {} of room {} ({} m)", width, wall_index,
                                             room.id(), len));
  }
  const Vec2& a = room.vertex(static_cast<std::size_t>(wall_index));
  const Vec2& b = room.vertex(static_cast<std::size_t>(wall_index) + 1);
  const Vec2 dir = (b - a) / len;

  DoorPlacement d;
  d.room_id = room.id();
  d.wall_index = wall_index;
  d.width = width;
  double offset = ratio * len;
  const double lo = 0.5 * width;
  const double hi = len - 0.5 * width;
  if (offset < lo || offset > hi) {
    offset = std::clamp(offset, lo, hi);
    d.clamped = true;
  }
  d.ratio = offset / len;
  d.center = a + dir * offset;
  d.normal = geom::perp_ccw(dir);
  return d;
}

int wall_at_corner(const RoomPolygon& room, const Vec2& corner, int corner_wall) {
  if (corner_wall != 0 && corner_wall != 1) throw InputError("doors", fmt::format("door wall {} is not 0 or 1", corner_wall));
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < room.size(); ++i) {
    const double d = (room.vertex(i) - corner).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  const std::size_t n = room.size();
  return static_cast<int>(corner_wall == 0 ? best : (best + n - 1) % n);
}

std::optional<int> wall_hit_by_column(const RoomPolygon& room, const PlanTransform& capture, const CameraIntrinsics& intr,
                                      double u) {
  const Vec2 origin(capture.tx, capture.ty);
  const Vec2 dir = capture.rotate(Vec2((u - intr.cx) / intr.f, 1.0)).normalized();
  std::optional<int> hit;
  double best_t = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < room.size(); ++i) {
    const Vec2& a = room.vertex(i);
    const Vec2 e = room.vertex(i + 1) - a;
    const double denom = geom::cross(dir, e);
    if (denom == 0.0) continue;
    const Vec2 w = a - origin;
    const double t = geom::cross(w, e) / denom;
    const double s = geom::cross(w, dir) / denom;
    if (t > 0.0 && s >= 0.0 && s <= 1.0 && t < best_t) {
      best_t = t;
      hit = static_cast<int>(i);
    }
  }
  return hit;
}

}  // namespace planforge
