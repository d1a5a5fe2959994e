#include "planforge/backprojection.hpp"

#include <fstream>

#include <fmt/format.h>

#include "planforge/error.hpp"

namespace planforge {

Vec3 backproject_pixel(double u, double v, double d, const CameraIntrinsics& intr, const SceneScale& scale) {
  if (!(d > 0.0)) throw InputError("backprojection", "invalid depth");
  if (u < 0.0 || v < 0.0 || u >= intr.width || v >= intr.height) {
    throw InputError("backprojection", fmt::format("pixel ({}, {}) outside the image", u, v));
  }
  const double z = d / scale.s;
  return {(u - intr.cx) * z / intr.f, (v - intr.cy) * z / intr.f, z};
}

PixelDepth project_point(const Vec3& p, const CameraIntrinsics& intr, const SceneScale& scale) {
  return {intr.f * p.x() / p.z() + intr.cx, intr.f * p.y() / p.z() + intr.cy, p.z() * scale.s};
}

LabeledCloud backproject_capture(const DepthMap& depth, const EdgeMask& mask, const CameraIntrinsics& intr,
                                 const SceneScale& scale, std::string capture_id) {
  if (depth.width != mask.width || depth.height != mask.height) {
    throw InputError("backprojection", fmt::format("{}: depth {}x{} and mask {}x{} differ", capture_id, depth.width,
                                                   depth.height, mask.width, mask.height));
  }
  LabeledCloud cloud;
  cloud.capture_id = std::move(capture_id);
  const std::size_t n = depth.valid_count();
  cloud.points.reserve(n);
  cloud.labels.reserve(n);
  for (int v = 0; v < depth.height; ++v) {
    for (int u = 0; u < depth.width; ++u) {
      const std::uint16_t d = depth.at(u, v);
      if (d == 0) continue;
      cloud.points.push_back(backproject_pixel(u, v, d, intr, scale));
      cloud.labels.push_back(mask.at(u, v));
    }
  }
  return cloud;
}

LabelFilter::LabelFilter(std::initializer_list<Label> labels) {
  for (Label l : labels) bits_ |= 1u << static_cast<unsigned>(l);
}

Vec2 camera_to_plan(const Vec3& p, const PlanTransform& xform) { return xform.apply(Vec2(p.x(), p.z())); }

PointSet2D project_to_plan(const LabeledCloud& cloud, const PlanTransform& xform, const LabelFilter& keep) {
  PointSet2D out;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (keep.accepts(cloud.labels[i])) out.points.push_back(camera_to_plan(cloud.points[i], xform));
  }
  return out;
}

PointSet2D decimate(const PointSet2D& points, std::size_t max_points) {
  if (max_points == 0 || points.size() <= max_points) return points;
  const std::size_t stride = (points.size() + max_points - 1) / max_points;
  PointSet2D out;
  out.points.reserve(points.size() / stride + 1);
  for (std::size_t i = 0; i < points.size(); i += stride) out.points.push_back(points.points[i]);
  return out;
}

void write_cloud_xyz(const std::filesystem::path& path, const LabeledCloud& cloud) {
  std::ofstream out(path);
  if (!out) throw InputError("backprojection", fmt::format("cannot write {}", path.string()));
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Vec3& p = cloud.points[i];
    out << fmt::format("{:.6f} {:.6f} {:.6f} {}\n", p.x(), p.y(), p.z(), to_string(cloud.labels[i]));
  }
}

}  // namespace planforge
