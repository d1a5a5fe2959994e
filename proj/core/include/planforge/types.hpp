#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace planforge {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

// Pinhole intrinsics with a single focal length, in pixels.
struct CameraIntrinsics {
  double f = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 0;
  int height = 0;

  void validate() const;
  double diagonal() const;
};

// Raw depth units per meter.
struct SceneScale {
  double s = 1.0;

  void validate() const;
};

enum class Label : std::uint8_t { other = 0, wall = 1, edge = 2 };

const char* to_string(Label label);

// Raw 16-bit depth raster; 0 marks an invalid pixel.
struct DepthMap {
  int width = 0;
  int height = 0;
  std::vector<std::uint16_t> values;  // row-major

  std::uint16_t at(int u, int v) const { return values[static_cast<std::size_t>(v) * width + u]; }
  std::size_t valid_count() const;
  void validate() const;
  void validate(const CameraIntrinsics& intr) const;
};

struct EdgeMask {
  int width = 0;
  int height = 0;
  std::vector<Label> labels;  // row-major

  Label at(int u, int v) const { return labels[static_cast<std::size_t>(v) * width + u]; }
  void validate() const;
};

// Camera-to-session pose. The capture frame is the pinhole frame (x right,
// y down, z forward); the session frame is gravity aligned with y down.
struct CapturePose {
  Eigen::Quaterniond q = Eigen::Quaterniond::Identity();
  Vec3 t = Vec3::Zero();

  void validate() const;
};

inline bool operator==(const CapturePose& a, const CapturePose& b) {
  return a.q.coeffs() == b.q.coeffs() && a.t == b.t;
}

// Rigid motion of the plan plane: rotate by yaw (counter-clockwise seen from
// above), then translate.
struct PlanTransform {
  double yaw = 0.0;
  double tx = 0.0;
  double ty = 0.0;

  Vec2 rotate(const Vec2& p) const;
  Vec2 apply(const Vec2& p) const;
  PlanTransform inverse() const;
  // World-frame composition: (this followed by `other`).
  PlanTransform then(const PlanTransform& other) const;
  static PlanTransform rotation(double yaw);

  void validate() const;
};

struct LabeledCloud {
  std::string capture_id;
  std::vector<Vec3> points;
  std::vector<Label> labels;

  std::size_t size() const { return points.size(); }
  void validate() const;
};

struct PointSet2D {
  std::vector<Vec2> points;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  void validate() const;
};

// Two perpendicular wall segments meeting at a corner. dir1 points along the
// first wall towards the apex, dir2 points from the apex along the second.
struct Wedge {
  Vec2 apex = Vec2::Zero();
  Vec2 dir1 = Vec2::UnitX();
  Vec2 dir2 = Vec2::UnitY();
  double len1 = 0.0;
  double len2 = 0.0;

  // Far ends of the two walls.
  Vec2 end1() const { return apex - dir1 * len1; }
  Vec2 end2() const { return apex + dir2 * len2; }
  void validate() const;
};

struct ClusterResult {
  std::array<Vec2, 3> means;   // means[1] is the wedge apex
  std::vector<int> assignments;
  std::vector<double> inertia_trace;  // within-cluster sum of squares per Lloyd step
  int iterations = 0;

  void validate() const;
};

class RoomPolygon {
 public:
  RoomPolygon() = default;
  // Vertices are reoriented to counter-clockwise order.
  RoomPolygon(std::string id, std::vector<Vec2> vertices);

  const std::string& id() const { return id_; }
  const std::vector<Vec2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Vec2& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }

  double area() const;
  double wall_length(std::size_t wall) const;

  void validate() const;
  // Right-angle check relative to the polygon's own edges.
  bool is_manhattan(double tol_rad = 1e-6) const;

 private:
  std::string id_;
  std::vector<Vec2> vertices_;
};

class BoundaryPolygon {
 public:
  BoundaryPolygon() = default;
  explicit BoundaryPolygon(std::vector<Vec2> vertices);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Vec2& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }

  void validate() const;

 private:
  std::vector<Vec2> vertices_;
};

struct DoorBox {
  std::string capture_id;
  double u_min = 0.0;
  double v_min = 0.0;
  double u_max = 0.0;
  double v_max = 0.0;
  double u_left = 0.0;   // image column of the wall's left corner
  double u_right = 0.0;  // image column of the wall's right corner
  // Which wall of the captured corner holds the door, when the manifest says:
  // 0 = the wall leaving the corner counter-clockwise, 1 = the wall arriving.
  std::optional<int> corner_wall;

  double centroid_u() const { return 0.5 * (u_min + u_max); }
  void validate() const;

  bool operator==(const DoorBox&) const = default;
};

struct DoorPlacement {
  std::string room_id;
  int wall_index = 0;
  double ratio = 0.0;   // offset of the door centre from the wall's first vertex, as a fraction of the wall
  double width = 0.0;   // meters
  bool clamped = false;
  Vec2 center = Vec2::Zero();
  Vec2 normal = Vec2::Zero();  // unit, pointing into the room

  void validate(double wall_length) const;
};

struct FloorPlan {
  std::vector<RoomPolygon> rooms;
  BoundaryPolygon boundary;
  std::vector<DoorPlacement> doors;
  double axis = 0.0;  // Manhattan reference direction, radians
  std::string units = "m";

  void validate() const;
};

struct MetricsReport {
  std::optional<double> ssim;
  std::optional<double> psnr_db;
  std::optional<double> pixel_error_pct;
  std::optional<double> corner_error_pct;
  std::optional<double> area_mape_pct;
  std::optional<double> aspect_mape_pct;

  void validate() const;
};

}  // namespace planforge
