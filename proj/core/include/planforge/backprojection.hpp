#pragma once

#include <filesystem>
#include <initializer_list>

#include "planforge/types.hpp"

namespace planforge {

// Back-projects pixel (u, v) with raw depth d into the camera frame (meters):
// Z = d / s, X = (u - cx) Z / f, Y = (v - cy) Z / f.
Vec3 backproject_pixel(double u, double v, double d, const CameraIntrinsics& intr, const SceneScale& scale);

struct PixelDepth {
  double u = 0.0;
  double v = 0.0;
  double d = 0.0;  // raw units
};

// Forward pinhole model; inverse of backproject_pixel for points with Z > 0.
PixelDepth project_point(const Vec3& p, const CameraIntrinsics& intr, const SceneScale& scale);

// One point per valid-depth pixel, in row-major pixel order, carrying the
// mask label. Points stay in the camera frame.
LabeledCloud backproject_capture(const DepthMap& depth, const EdgeMask& mask, const CameraIntrinsics& intr,
                                 const SceneScale& scale, std::string capture_id = {});

class LabelFilter {
 public:
  LabelFilter(std::initializer_list<Label> labels);
  static LabelFilter edges() { return {Label::edge}; }

  bool accepts(Label l) const { return (bits_ >> static_cast<unsigned>(l)) & 1u; }

 private:
  unsigned bits_ = 0;
};

// Camera-frame (X, Z) becomes plan (x, y) before the yaw and translation are
// applied; the vertical Y is dropped.
Vec2 camera_to_plan(const Vec3& p, const PlanTransform& xform);

PointSet2D project_to_plan(const LabeledCloud& cloud, const PlanTransform& xform,
                           const LabelFilter& keep = LabelFilter::edges());

inline constexpr std::size_t kDefaultMaxPoints = 50'000;

// Keeps every k-th point, k = ceil(n / max_points), so at most max_points remain.
PointSet2D decimate(const PointSet2D& points, std::size_t max_points);

// Debug dump: "x y z label" per line.
void write_cloud_xyz(const std::filesystem::path& path, const LabeledCloud& cloud);

}  // namespace planforge
