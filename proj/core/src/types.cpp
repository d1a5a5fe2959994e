#include "planforge/types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "planforge/error.hpp"
#include "planforge/geometry.hpp"

namespace planforge {
namespace {

void require(bool ok, const char* type, const std::string& what) {
  if (!ok) throw InputError(type, fmt::format("{}: {}", type, what));
}

bool finite(const Vec2& p) { return std::isfinite(p.x()) && std::isfinite(p.y()); }
bool finite(const Vec3& p) { return p.allFinite(); }

}  // namespace

const char* to_string(Label label) {
  switch (label) {
    case Label::wall: return "wall";
    case Label::edge: return "edge";
    case Label::other: break;
  }
  return "other";
}

void CameraIntrinsics::validate() const {
  require(std::isfinite(f) && f > 0, "CameraIntrinsics", "focal length must be positive");
  require(width > 0 && height > 0, "CameraIntrinsics", "image size must be positive");
  require(cx >= 0 && cx < width, "CameraIntrinsics", "cx outside image");
  require(cy >= 0 && cy < height, "CameraIntrinsics", "cy outside image");
}

double CameraIntrinsics::diagonal() const { return std::hypot(double(width), double(height)); }

void SceneScale::validate() const {
  require(std::isfinite(s) && s > 0, "SceneScale", "scale must be positive and finite");
}

std::size_t DepthMap::valid_count() const {
  return static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [](auto d) { return d > 0; }));
}

void DepthMap::validate() const {
  require(width > 0 && height > 0, "DepthMap", "empty raster");
  require(values.size() == static_cast<std::size_t>(width) * height, "DepthMap", "value count mismatch");
}

void DepthMap::validate(const CameraIntrinsics& intr) const {
  validate();
  if (width != intr.width || height != intr.height) {
    throw InputError("DepthMap", fmt::format("dimension mismatch: raster {}x{} vs intrinsics {}x{}", width, height,
                                             intr.width, intr.height));
  }
}

void EdgeMask::validate() const {
  require(width > 0 && height > 0, "EdgeMask", "empty raster");
  require(labels.size() == static_cast<std::size_t>(width) * height, "EdgeMask", "label count mismatch");
}

void CapturePose::validate() const {
  require(q.coeffs().allFinite() && t.allFinite(), "CapturePose", "non-finite pose");
  if (std::abs(q.norm() - 1.0) > 1e-9) throw InputError("CapturePose", "non-unit quaternion");
}

Vec2 PlanTransform::rotate(const Vec2& p) const { return geom::rotate(p, yaw); }

Vec2 PlanTransform::apply(const Vec2& p) const { return rotate(p) + Vec2(tx, ty); }

PlanTransform PlanTransform::inverse() const {
  const Vec2 t = geom::rotate(Vec2(tx, ty), -yaw);
  return {geom::wrap_angle(-yaw), -t.x(), -t.y()};
}

PlanTransform PlanTransform::then(const PlanTransform& other) const {
  const Vec2 t = other.apply(Vec2(tx, ty));
  return {geom::wrap_angle(yaw + other.yaw), t.x(), t.y()};
}

PlanTransform PlanTransform::rotation(double yaw) { return {geom::wrap_angle(yaw), 0.0, 0.0}; }

void PlanTransform::validate() const {
  require(std::isfinite(yaw) && std::isfinite(tx) && std::isfinite(ty), "PlanTransform", "non-finite transform");
  require(yaw > -std::numbers::pi && yaw <= std::numbers::pi, "PlanTransform", "yaw outside (-pi, pi]");
}

void LabeledCloud::validate() const {
  require(points.size() == labels.size(), "LabeledCloud", "points and labels differ in length");
  require(std::all_of(points.begin(), points.end(), [](const Vec3& p) { return finite(p); }), "LabeledCloud",
          "non-finite coordinate");
}

void PointSet2D::validate() const {
  require(std::all_of(points.begin(), points.end(), [](const Vec2& p) { return finite(p); }), "PointSet2D",
          "non-finite coordinate");
}

void Wedge::validate() const {
  require(finite(apex) && finite(dir1) && finite(dir2), "Wedge", "non-finite wedge");
  require(std::abs(dir1.norm() - 1.0) < 1e-9 && std::abs(dir2.norm() - 1.0) < 1e-9, "Wedge",
          "directions must be unit length");
  require(std::abs(dir1.dot(dir2)) < 1e-9, "Wedge", "walls are not perpendicular");
  require(len1 > 0 && len2 > 0, "Wedge", "wall lengths must be positive");
}

void ClusterResult::validate() const {
  for (const Vec2& m : means) require(finite(m), "ClusterResult", "non-finite mean");
  require(std::all_of(assignments.begin(), assignments.end(), [](int a) { return a >= 0 && a < 3; }),
          "ClusterResult", "assignment out of range");
}

RoomPolygon::RoomPolygon(std::string id, std::vector<Vec2> vertices)
    : id_(std::move(id)), vertices_(std::move(vertices)) {
  if (geom::signed_area(vertices_) < 0.0) std::reverse(vertices_.begin(), vertices_.end());
}

double RoomPolygon::area() const { return geom::polygon_area(vertices_); }

double RoomPolygon::wall_length(std::size_t wall) const { return (vertex(wall + 1) - vertex(wall)).norm(); }

void RoomPolygon::validate() const {
  require(vertices_.size() >= 3, "RoomPolygon", fmt::format("room {} has fewer than 3 vertices", id_));
  require(std::all_of(vertices_.begin(), vertices_.end(), [](const Vec2& p) { return finite(p); }), "RoomPolygon",
          "non-finite vertex");
  require(geom::is_simple(vertices_), "RoomPolygon", fmt::format("room {} is not simple", id_));
}

bool RoomPolygon::is_manhattan(double tol_rad) const {
  for (double a : geom::interior_angles(vertices_)) {
    const bool right = std::abs(a - 0.5 * std::numbers::pi) <= tol_rad;
    const bool reflex = std::abs(a - 1.5 * std::numbers::pi) <= tol_rad;
    if (!right && !reflex) return false;
  }
  return true;
}

BoundaryPolygon::BoundaryPolygon(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
  if (geom::signed_area(vertices_) < 0.0) std::reverse(vertices_.begin(), vertices_.end());
}

void BoundaryPolygon::validate() const {
  require(vertices_.size() >= 3, "BoundaryPolygon", "fewer than 3 vertices");
  require(geom::is_convex(vertices_), "BoundaryPolygon", "boundary is not convex");
  require(geom::is_simple(vertices_), "BoundaryPolygon", "boundary is not simple");
}

void DoorBox::validate() const {
  require(u_min < u_max, "DoorBox", "u_min must be below u_max");
  require(v_min <= v_max, "DoorBox", "v_min must not exceed v_max");
  require(u_left < u_right, "DoorBox", "u_left must be below u_right");
}

void DoorPlacement::validate(double wall_length) const {
  require(ratio >= 0.0 && ratio <= 1.0, "DoorPlacement", "ratio outside [0, 1]");
  require(width > 0.0 && width < wall_length, "DoorPlacement", "door wider than its wall");
}

void FloorPlan::validate() const {
  boundary.validate();
  const auto& b = boundary.vertices();
  for (const RoomPolygon& room : rooms) {
    room.validate();
    for (const Vec2& p : room.vertices()) {
      for (std::size_t i = 0; i < b.size(); ++i) {
        const Vec2& a = b[i];
        const Vec2& c = b[(i + 1) % b.size()];
        const double side = geom::orient(a, c, p) / (c - a).norm();
        require(side >= -1e-6, "FloorPlan", fmt::format("room {} vertex outside boundary", room.id()));
      }
    }
  }
}

void MetricsReport::validate() const {
  if (ssim) require(*ssim >= -1.0 - 1e-12 && *ssim <= 1.0 + 1e-12, "MetricsReport", "ssim outside [-1, 1]");
  if (pixel_error_pct) {
    require(*pixel_error_pct >= 0 && *pixel_error_pct <= 100, "MetricsReport", "pixel error outside [0, 100]");
  }
  if (area_mape_pct) require(*area_mape_pct >= 0, "MetricsReport", "negative area MAPE");
  if (aspect_mape_pct) require(*aspect_mape_pct >= 0, "MetricsReport", "negative aspect MAPE");
  if (corner_error_pct) require(*corner_error_pct >= 0, "MetricsReport", "negative corner error");
}

}  // namespace planforge
