#include "planforge/global_assemble.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "planforge/error.hpp"
#include "planforge/geometry.hpp"

namespace planforge {
namespace {

constexpr double kPi = std::numbers::pi;

// A wall line in the axis frame: horizontal (y = offset) or vertical (x = offset).
struct AxisLine {
  bool horizontal = true;
  double offset = 0.0;
  double weight = 0.0;
};

bool is_horizontal(const Vec2& d) { return std::abs(d.x()) >= std::abs(d.y()); }

std::vector<Vec2> to_axis_frame(const std::vector<Vec2>& pts, double axis) {
  std::vector<Vec2> out;
  out.reserve(pts.size());
  for (const Vec2& p : pts) out.push_back(geom::rotate(p, -axis));
  return out;
}

std::vector<Vec2> from_axis_frame(const std::vector<Vec2>& pts, double axis) {
  std::vector<Vec2> out;
  out.reserve(pts.size());
  for (const Vec2& p : pts) out.push_back(geom::rotate(p, axis));
  return out;
}

// Splits sorted offsets at the largest gap; returns the two group means.
std::pair<double, double> two_groups(std::vector<double> offsets, double max_spread, const char* what) {
  if (offsets.size() < 2) throw GeometryError("global_assemble", fmt::format("insufficient walls: {} {} line(s)", offsets.size(), what));
  std::sort(offsets.begin(), offsets.end());
  std::size_t cut = 1;
  double widest = -1.0;
  for (std::size_t i = 1; i < offsets.size(); ++i) {
    const double gap = offsets[i] - offsets[i - 1];
    if (gap > widest) {
      widest = gap;
      cut = i;
    }
  }
  auto mean_of = [&](std::size_t b, std::size_t e) {
    if (offsets[e - 1] - offsets[b] > max_spread) {
      throw GeometryError("global_assemble",
                          fmt::format("inconsistent captures: {} walls spread {:.3f} m", what, offsets[e - 1] - offsets[b]));
    }
    double s = 0.0;
    for (std::size_t i = b; i < e; ++i) s += offsets[i];
    return s / static_cast<double>(e - b);
  };
  return {mean_of(0, cut), mean_of(cut, offsets.size())};
}

bool already_manhattan(const std::vector<Vec2>& local) {
  const std::size_t n = local.size();
  if (n < 4) return false;
  bool prev = false;
  for (std::size_t i = 0; i <= n; ++i) {
    const Vec2 d = local[(i + 1) % n] - local[i % n];
    const double len = d.norm();
    if (len == 0.0) return false;
    const bool h = is_horizontal(d);
    const double off = (h ? std::abs(d.y()) : std::abs(d.x())) / len;
    if (off > 1e-12) return false;
    if (i > 0 && h == prev) return false;
    prev = h;
  }
  return true;
}

// Interval bounds of a rectilinear rectangle in the axis frame.
struct Box {
  double x0, x1, y0, y1;
};

Box bounds(const std::vector<Vec2>& local) {
  Box b{local[0].x(), local[0].x(), local[0].y(), local[0].y()};
  for (const Vec2& p : local) {
    b.x0 = std::min(b.x0, p.x());
    b.x1 = std::max(b.x1, p.x());
    b.y0 = std::min(b.y0, p.y());
    b.y1 = std::max(b.y1, p.y());
  }
  return b;
}

std::vector<Vec2> box_vertices(const Box& b) {
  return {{b.x0, b.y0}, {b.x1, b.y0}, {b.x1, b.y1}, {b.x0, b.y1}};
}

// Even-odd membership of a point in a rectilinear polygon (axis frame).
bool inside_rectilinear(const Vec2& p, const std::vector<Vec2>& poly) {
  bool in = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Vec2& a = poly[j];
    const Vec2& b = poly[i];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (x > p.x()) in = !in;
    }
  }
  return in;
}

}  // namespace

double estimate_manhattan_axis(std::span<const Wedge> wedges) {
  double s = 0.0;
  double c = 0.0;
  for (const Wedge& w : wedges) {
    for (const Vec2& d : {w.dir1, w.dir2}) {
      const double theta = std::atan2(d.y(), d.x());
      const double weight = d.norm();
      s += weight * std::sin(4.0 * theta);
      c += weight * std::cos(4.0 * theta);
    }
  }
  if (s == 0.0 && c == 0.0) return 0.0;
  double axis = std::atan2(s, c) / 4.0;
  if (axis <= -kPi / 4.0) axis += kPi / 2.0;
  return axis;
}

RoomPolygon assemble_room(std::span<const Wedge> wedges, std::string id, double axis, const AssembleOptions& opts) {
  if (wedges.size() != 4) {
    throw GeometryError("global_assemble", fmt::format("insufficient walls: room {} has {} corner(s), need 4", id, wedges.size()));
  }
  std::vector<double> h_offsets;
  std::vector<double> v_offsets;
  for (const Wedge& w : wedges) {
    const Vec2 apex = geom::rotate(w.apex, -axis);
    for (const Vec2& dir : {w.dir1, w.dir2}) {
      const Vec2 d = geom::rotate(dir, -axis);
      if (is_horizontal(d)) {
        h_offsets.push_back(apex.y());
      } else {
        v_offsets.push_back(apex.x());
      }
    }
  }
  const auto [y0, y1] = two_groups(h_offsets, opts.max_group_spread, "horizontal");
  const auto [x0, x1] = two_groups(v_offsets, opts.max_group_spread, "vertical");
  return RoomPolygon(std::move(id), from_axis_frame(box_vertices({x0, x1, y0, y1}), axis));
}

RoomPolygon snap_manhattan(const RoomPolygon& poly, double axis, const AssembleOptions& opts, SnapReport* report) {
  SnapReport local_report;
  SnapReport& rep = report ? *report : local_report;
  rep = {};

  const std::vector<Vec2> local = to_axis_frame(poly.vertices(), axis);
  if (already_manhattan(local)) return poly;

  // Classify edges, dropping zero-length ones.
  std::vector<AxisLine> lines;
  std::vector<Vec2> dirs;
  const std::size_t n = local.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = local[i];
    const Vec2& b = local[(i + 1) % n];
    const Vec2 d = b - a;
    const double len = d.norm();
    if (len == 0.0) continue;
    const bool h = is_horizontal(d);
    lines.push_back({h, h ? 0.5 * (a.y() + b.y()) : 0.5 * (a.x() + b.x()), len});
    dirs.push_back(d / len);
  }

  // Turns away from square by more than the tolerance are forced corners.
  const double tol = opts.snap_angle_deg * kPi / 180.0;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const Vec2& d0 = dirs[i];
    const Vec2& d1 = dirs[(i + 1) % dirs.size()];
    const double turn = std::abs(std::atan2(geom::cross(d0, d1), d0.dot(d1)));
    if (lines[i].horizontal != lines[(i + 1) % lines.size()].horizontal && std::abs(turn - kPi / 2.0) > tol) {
      ++rep.forced_corners;
    }
  }

  // Fold runs of same-class edges into one line, cyclically.
  const std::size_t m = lines.size();
  std::size_t start = m;
  for (std::size_t i = 0; i < m; ++i) {
    if (lines[i].horizontal != lines[(i + m - 1) % m].horizontal) {
      start = i;
      break;
    }
  }
  if (start == m) throw GeometryError("global_assemble", fmt::format("degenerate room {}: all walls parallel", poly.id()));
  std::vector<AxisLine> merged;
  for (std::size_t k = 0; k < m; ++k) {
    const AxisLine& l = lines[(start + k) % m];
    if (!merged.empty() && merged.back().horizontal == l.horizontal) {
      AxisLine& b = merged.back();
      b.offset = (b.offset * b.weight + l.offset * l.weight) / (b.weight + l.weight);
      b.weight += l.weight;
      ++rep.merged_vertices;
    } else {
      merged.push_back(l);
    }
  }
  if (merged.size() < 4) {
    throw GeometryError("global_assemble", fmt::format("degenerate room {}: {} wall(s) after snapping", poly.id(), merged.size()));
  }

  // Vertex k sits where line k-1 meets line k.
  std::vector<Vec2> out;
  out.reserve(merged.size());
  for (std::size_t k = 0; k < merged.size(); ++k) {
    const AxisLine& prev = merged[(k + merged.size() - 1) % merged.size()];
    const AxisLine& cur = merged[k];
    out.push_back(cur.horizontal ? Vec2(prev.offset, cur.offset) : Vec2(cur.offset, prev.offset));
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (out[k] == out[(k + 1) % out.size()]) {
      throw GeometryError("global_assemble", fmt::format("degenerate room {}: snapping collapsed a wall", poly.id()));
    }
  }
  if (!geom::is_simple(out)) {
    throw GeometryError("global_assemble", fmt::format("degenerate room {}: snapped outline self-intersects", poly.id()));
  }
  return RoomPolygon(poly.id(), from_axis_frame(out, axis));
}

BoundaryPolygon boundary_hull(std::span<const RoomPolygon> rooms) {
  std::vector<Vec2> pts;
  for (const RoomPolygon& r : rooms) pts.insert(pts.end(), r.vertices().begin(), r.vertices().end());
  if (pts.size() < 3) throw GeometryError("global_assemble", "boundary needs at least one room");
  return BoundaryPolygon(geom::convex_hull(pts));
}

Containment point_in_boundary(const Vec2& p, const BoundaryPolygon& boundary, double edge_eps) {
  const std::vector<Vec2>& poly = boundary.vertices();
  if (geom::nearest_edge(p, poly).distance <= edge_eps) return Containment::inside;
  bool in = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Vec2& a = poly[j];
    const Vec2& b = poly[i];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (x > p.x()) in = !in;
    }
  }
  return in ? Containment::inside : Containment::outside;
}

Vec2 perpendicular_foot(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 d = b - a;
  const double len2 = d.squaredNorm();
  if (len2 == 0.0) return a;
  return a + d * ((p - a).dot(d) / len2);
}

RoomPolygon align_to_boundary(const RoomPolygon& room, const BoundaryPolygon& boundary, double snap_dist, double axis,
                              const AssembleOptions& opts) {
  const std::vector<Vec2>& hull = boundary.vertices();
  std::vector<Vec2> verts = room.vertices();
  bool moved = false;
  for (Vec2& v : verts) {
    if (point_in_boundary(v, boundary) != Containment::inside) continue;
    const geom::NearestEdge ne = geom::nearest_edge(v, hull);
    if (ne.distance == 0.0 || ne.distance > snap_dist) continue;
    const Vec2& a = hull[ne.index];
    const Vec2& b = hull[(ne.index + 1) % hull.size()];
    v = geom::closest_point_on_segment(v, a, b);
    moved = true;
  }
  if (!moved) return room;
  return snap_manhattan(RoomPolygon(room.id(), std::move(verts)), axis, opts);
}

std::vector<RoomPolygon> reconcile_shared_walls(std::vector<RoomPolygon> rooms, double axis, double max_gap) {
  std::vector<Box> boxes;
  std::vector<bool> rect;
  for (const RoomPolygon& r : rooms) {
    const std::vector<Vec2> local = to_axis_frame(r.vertices(), axis);
    boxes.push_back(bounds(local));
    rect.push_back(local.size() == 4 && already_manhattan(local));
  }
  for (std::size_t i = 0; i < rooms.size(); ++i) {
    for (std::size_t j = i + 1; j < rooms.size(); ++j) {
      if (!rect[i] || !rect[j]) continue;
      Box& a = boxes[i];
      Box& b = boxes[j];
      const double ox = std::min(a.x1, b.x1) - std::max(a.x0, b.x0);
      const double oy = std::min(a.y1, b.y1) - std::max(a.y0, b.y0);
      // Facing walls across x: rooms overlap in y and their x extents meet.
      if (oy > max_gap) {
        Box& left = (a.x0 + a.x1 <= b.x0 + b.x1) ? a : b;
        Box& right = (&left == &a) ? b : a;
        if (std::abs(right.x0 - left.x1) <= max_gap && right.x0 != left.x1) {
          const double mid = 0.5 * (right.x0 + left.x1);
          left.x1 = mid;
          right.x0 = mid;
          continue;
        }
      }
      if (ox > max_gap) {
        Box& low = (a.y0 + a.y1 <= b.y0 + b.y1) ? a : b;
        Box& high = (&low == &a) ? b : a;
        if (std::abs(high.y0 - low.y1) <= max_gap && high.y0 != low.y1) {
          const double mid = 0.5 * (high.y0 + low.y1);
          low.y1 = mid;
          high.y0 = mid;
        }
      }
    }
  }
  for (std::size_t i = 0; i < rooms.size(); ++i) {
    if (rect[i]) rooms[i] = RoomPolygon(rooms[i].id(), from_axis_frame(box_vertices(boxes[i]), axis));
  }
  return rooms;
}

double rectilinear_overlap_area(const RoomPolygon& a, const RoomPolygon& b, double axis) {
  const std::vector<Vec2> pa = to_axis_frame(a.vertices(), axis);
  const std::vector<Vec2> pb = to_axis_frame(b.vertices(), axis);
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto* poly : {&pa, &pb}) {
    for (const Vec2& p : *poly) {
      xs.push_back(p.x());
      ys.push_back(p.y());
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  double area = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
      const Vec2 c(0.5 * (xs[i] + xs[i + 1]), 0.5 * (ys[j] + ys[j + 1]));
      if (inside_rectilinear(c, pa) && inside_rectilinear(c, pb)) {
        area += (xs[i + 1] - xs[i]) * (ys[j + 1] - ys[j]);
      }
    }
  }
  return area;
}

FloorPlan build_floorplan(std::vector<RoomPolygon> rooms, BoundaryPolygon boundary, std::vector<DoorPlacement> doors,
                          double axis, const AssembleOptions& opts) {
  for (std::size_t i = 0; i < rooms.size(); ++i) {
    for (std::size_t j = i + 1; j < rooms.size(); ++j) {
      const double overlap = rectilinear_overlap_area(rooms[i], rooms[j], axis);
      if (overlap > opts.overlap_tolerance) {
        throw GeometryError("global_assemble", fmt::format("rooms {} and {} overlap by {:.6f} m^2", rooms[i].id(),
                                                           rooms[j].id(), overlap));
      }
    }
  }
  FloorPlan plan;
  plan.rooms = std::move(rooms);
  plan.boundary = std::move(boundary);
  plan.doors = std::move(doors);
  plan.axis = axis;
  plan.validate();
  return plan;
}

double aspect_ratio(const RoomPolygon& room, double axis) {
  const Box b = bounds(to_axis_frame(room.vertices(), axis));
  const double w = b.x1 - b.x0;
  const double h = b.y1 - b.y0;
  if (w <= 0.0 || h <= 0.0) throw GeometryError("global_assemble", fmt::format("degenerate room {}", room.id()));
  return std::max(w, h) / std::min(w, h);
}

}  // namespace planforge
