#include "planforge/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "planforge/error.hpp"
#include "planforge/geometry.hpp"
#include "planforge/parallel.hpp"
#include "planforge/plan_io.hpp"

namespace planforge {
namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Box-Muller; portable across standard libraries.
double gaussian(std::mt19937_64& rng) {
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError("synth", fmt::format("invalid floor spec: {}", what));
}

bool interiors_overlap(const SynthRoom& a, const SynthRoom& b) {
  return std::min(a.max.x(), b.max.x()) > std::max(a.min.x(), b.min.x()) &&
         std::min(a.max.y(), b.max.y()) > std::max(a.min.y(), b.min.y());
}

enum class Surface { none, wall, floor, ceiling, occluder };

struct Hit {
  double t = std::numeric_limits<double>::infinity();
  Surface surface = Surface::none;
};

// Entry distance of a ray into an axis-aligned box, if it enters ahead.
double slab_entry(const Vec3& o, const Vec3& r, const Vec3& lo, const Vec3& hi) {
  double t0 = 0.0;
  double t1 = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 3; ++k) {
    if (r[k] == 0.0) {
      if (o[k] < lo[k] || o[k] > hi[k]) return std::numeric_limits<double>::infinity();
      continue;
    }
    double a = (lo[k] - o[k]) / r[k];
    double b = (hi[k] - o[k]) / r[k];
    if (a > b) std::swap(a, b);
    t0 = std::max(t0, a);
    t1 = std::min(t1, b);
    if (t0 > t1) return std::numeric_limits<double>::infinity();
  }
  return t0 > 0.0 ? t0 : std::numeric_limits<double>::infinity();
}

Hit cast(const Vec3& o, const Vec3& r, const SynthRoom& room, const FloorSpec& spec) {
  Hit h;
  auto consider = [&](double t, Surface s) {
    if (t > 0.0 && t < h.t) {
      h.t = t;
      h.surface = s;
    }
  };
  if (r.x() > 0.0) consider((room.max.x() - o.x()) / r.x(), Surface::wall);
  if (r.x() < 0.0) consider((room.min.x() - o.x()) / r.x(), Surface::wall);
  if (r.z() > 0.0) consider((room.max.y() - o.z()) / r.z(), Surface::wall);
  if (r.z() < 0.0) consider((room.min.y() - o.z()) / r.z(), Surface::wall);
  if (r.y() > 0.0) consider(-o.y() / r.y(), Surface::floor);
  if (r.y() < 0.0) consider((-spec.ceiling_height - o.y()) / r.y(), Surface::ceiling);
  for (const Occluder& b : spec.occluders) {
    consider(slab_entry(o, r, {b.min.x(), -b.height, b.min.y()}, {b.max.x(), 0.0, b.max.y()}), Surface::occluder);
  }
  return h;
}

// Wall hit within the junction band of the floor or of another wall.
bool near_junction(const Vec3& p, const SynthRoom& room) {
  if (p.y() >= -kJunctionBand) return true;
  const double dx = std::min(std::abs(p.x() - room.min.x()), std::abs(p.x() - room.max.x()));
  const double dz = std::min(std::abs(p.z() - room.min.y()), std::abs(p.z() - room.max.y()));
  // One of the two is ~0 on a wall; the other is the along-wall distance to a corner.
  return std::max(dx, dz) <= kJunctionBand;
}

CapturePose noisy_pose(const CapturePose& truth, const NoiseSpec& noise, std::mt19937_64& rng) {
  const double dyaw = noise.yaw_sigma * gaussian(rng);
  const double dx = noise.translation_sigma * gaussian(rng);
  const double dz = noise.translation_sigma * gaussian(rng);
  CapturePose p = truth;
  if (dyaw != 0.0) p.q = (Eigen::Quaterniond(Eigen::AngleAxisd(dyaw, -Vec3::UnitY())) * truth.q).normalized();
  p.t += Vec3(dx, 0.0, dz);
  return p;
}

// The door as seen by a camera on the wall normal through the wall's middle,
// so image columns map affinely onto the wall.
DoorBox door_view(const SynthDoor& door, double wall_length, const CameraIntrinsics& intr, double camera_height) {
  const double dist = 0.6875 * wall_length;  // whole wall in view for the default lens
  const double k = intr.f / dist;
  // Seen from inside, image-left is the wall's far end.
  auto u_at = [&](double s) { return intr.cx - k * (s - 0.5 * wall_length); };
  const double c = door.offset * wall_length;
  DoorBox b;
  b.u_left = u_at(wall_length);
  b.u_right = u_at(0.0);
  b.u_min = u_at(c + 0.5 * door.width);
  b.u_max = u_at(c - 0.5 * door.width);
  b.v_min = intr.cy + k * (camera_height - kDoorHeight);
  b.v_max = intr.cy + k * camera_height;
  b.corner_wall = 0;
  return b;
}

SynthCapture render_capture(const FloorSpec& spec, const SynthRoom& room, int corner, const CameraIntrinsics& intr,
                            const SceneScale& scale, std::uint64_t seed) {
  SynthCapture cap;
  cap.true_pose = corner_pose(room, corner, spec.camera_height);

  const Vec2 target = room.corners()[static_cast<std::size_t>(corner)];
  const Vec3 o = cap.true_pose.t;
  const Vec3 corner_at_eye(target.x(), o.y(), target.y());
  const Vec3 to_corner = corner_at_eye - o;
  for (const Occluder& b : spec.occluders) {
    const double t = slab_entry(o, to_corner, {b.min.x(), -b.height, b.min.y()}, {b.max.x(), 0.0, b.max.y()});
    if (t < 1.0) throw GeometryError("synth", fmt::format("occluded corner {} of room {}", corner, room.id));
  }

  std::mt19937_64 rng(seed);
  cap.reported_pose = noisy_pose(cap.true_pose, spec.noise, rng);
  const double depth_gain = 1.0 + spec.noise.depth_sigma * gaussian(rng);

  const Eigen::Matrix3d rot = cap.true_pose.q.toRotationMatrix();
  const std::size_t n = static_cast<std::size_t>(intr.width) * intr.height;
  cap.depth.width = cap.mask.width = intr.width;
  cap.depth.height = cap.mask.height = intr.height;
  cap.depth.values.assign(n, 0);
  cap.depth_m.assign(n, 0.0);
  cap.mask.labels.assign(n, Label::other);
  for (int v = 0; v < intr.height; ++v) {
    for (int u = 0; u < intr.width; ++u) {
      const Vec3 ray_c((u - intr.cx) / intr.f, (v - intr.cy) / intr.f, 1.0);
      const Hit h = cast(o, rot * ray_c, room, spec);
      if (h.surface == Surface::none) continue;
      const std::size_t i = static_cast<std::size_t>(v) * intr.width + u;
      cap.depth_m[i] = h.t;  // the camera ray has unit Z, so t is the depth
      if (h.surface == Surface::wall) {
        cap.mask.labels[i] = near_junction(o + h.t * (rot * ray_c), room) ? Label::edge : Label::wall;
      }
      double z = h.t * depth_gain;
      if (spec.noise.depth_pixel_sigma > 0.0) z *= 1.0 + spec.noise.depth_pixel_sigma * gaussian(rng);
      const double raw = std::round(z * scale.s);
      cap.depth.values[i] = static_cast<std::uint16_t>(std::clamp(raw, 0.0, 65535.0));
    }
  }
  return cap;
}

}  // namespace

std::vector<Vec2> SynthRoom::corners() const {
  return {min, {max.x(), min.y()}, max, {min.x(), max.y()}};
}

void FloorSpec::validate() const {
  require(!rooms.empty(), "no rooms");
  for (std::size_t i = 0; i < rooms.size(); ++i) {
    const SynthRoom& r = rooms[i];
    require(!r.id.empty(), "room without id");
    require(r.min.allFinite() && r.max.allFinite(), fmt::format("room {} has non-finite extent", r.id));
    require(r.max.x() - r.min.x() >= kMinRoomSide && r.max.y() - r.min.y() >= kMinRoomSide,
            fmt::format("room {} narrower than {} m", r.id, kMinRoomSide));
    for (std::size_t j = 0; j < i; ++j) {
      require(rooms[j].id != r.id, fmt::format("duplicate room id {}", r.id));
      require(!interiors_overlap(rooms[j], r), fmt::format("rooms {} and {} overlap", rooms[j].id, r.id));
    }
  }
  for (const SynthDoor& d : doors) {
    auto it = std::find_if(rooms.begin(), rooms.end(), [&](const SynthRoom& r) { return r.id == d.room_id; });
    require(it != rooms.end(), fmt::format("door references unknown room {}", d.room_id));
    require(d.wall >= 0 && d.wall < 4, fmt::format("door wall {} out of range", d.wall));
    const std::vector<Vec2> c = it->corners();
    const double len = (c[static_cast<std::size_t>(d.wall + 1) % 4] - c[static_cast<std::size_t>(d.wall)]).norm();
    const double centre = d.offset * len;
    require(d.width > 0.0 && centre - 0.5 * d.width > 0.0 && centre + 0.5 * d.width < len,
            fmt::format("door on wall {} of room {} does not fit", d.wall, d.room_id));
  }
  for (const Occluder& b : occluders) {
    require(b.height > 0.0 && b.max.x() > b.min.x() && b.max.y() > b.min.y(), "degenerate occluder");
  }
  require(camera_height > 0.0 && camera_height < ceiling_height, "camera must sit between floor and ceiling");
  require(noise.depth_sigma >= 0.0 && noise.depth_pixel_sigma >= 0.0 && noise.yaw_sigma >= 0.0 &&
              noise.translation_sigma >= 0.0,
          "noise sigmas must be non-negative");
}

CameraIntrinsics default_intrinsics() { return {400.0, 320.0, 240.0, 640, 480}; }

SceneScale default_scale() { return {1000.0}; }

const GroundTruthRoom* GroundTruth::find(const std::string& id) const {
  for (const GroundTruthRoom& r : rooms) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

GroundTruth ground_truth(const FloorSpec& spec) {
  GroundTruth gt;
  for (const SynthRoom& r : spec.rooms) {
    const double w = r.max.x() - r.min.x();
    const double h = r.max.y() - r.min.y();
    gt.rooms.push_back({r.id, r.corners(), w * h, std::max(w, h) / std::min(w, h)});
  }
  for (const SynthDoor& d : spec.doors) {
    const GroundTruthRoom* room = gt.find(d.room_id);
    const Vec2& a = room->corners[static_cast<std::size_t>(d.wall)];
    const Vec2& b = room->corners[static_cast<std::size_t>(d.wall + 1) % 4];
    gt.doors.push_back({d.room_id, d.wall, d.offset, d.width, a + d.offset * (b - a)});
  }
  return gt;
}

std::vector<GroundTruthRoom> ground_truth_report(const GroundTruth& gt) {
  std::vector<GroundTruthRoom> out = gt.rooms;
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

CapturePose corner_pose(const SynthRoom& room, int corner, double camera_height) {
  const Vec2 centre = 0.5 * (room.min + room.max);
  const Vec2 target = room.corners()[static_cast<std::size_t>(corner)];
  const Vec2 dir = (target - centre).normalized();
  const Vec2 eye = centre - kCameraBackoff * dir;
  const Vec2 facing = (target - eye).normalized();
  CapturePose p;
  p.q = Eigen::Quaterniond(Eigen::AngleAxisd(std::atan2(-facing.x(), facing.y()), -Vec3::UnitY()));
  p.t = Vec3(eye.x(), -camera_height, eye.y());
  return p;
}

SynthDataset generate(const FloorSpec& spec, const CameraIntrinsics& intr, const SceneScale& scale) {
  spec.validate();
  intr.validate();
  scale.validate();

  SynthDataset data;
  data.truth = ground_truth(spec);
  data.manifest.intrinsics = intr;
  data.manifest.scale = scale;

  const std::size_t rooms = spec.rooms.size();
  data.captures.assign(rooms, std::vector<SynthCapture>(4));
  parallel_for(rooms * 4, [&](std::size_t k) {
    const std::size_t r = k / 4;
    const int c = static_cast<int>(k % 4);
    data.captures[r][static_cast<std::size_t>(c)] =
        render_capture(spec, spec.rooms[r], c, intr, scale, stream_seed(spec.seed, r, static_cast<std::uint64_t>(c)));
  });

  for (const SynthDoor& d : spec.doors) {
    const std::size_t r = static_cast<std::size_t>(
        std::find_if(spec.rooms.begin(), spec.rooms.end(), [&](const SynthRoom& x) { return x.id == d.room_id; }) -
        spec.rooms.begin());
    const std::vector<Vec2> c = spec.rooms[r].corners();
    const double len = (c[static_cast<std::size_t>(d.wall + 1) % 4] - c[static_cast<std::size_t>(d.wall)]).norm();
    DoorBox box = door_view(d, len, intr, spec.camera_height);
    box.capture_id = DatasetManifest::capture_id(spec.rooms[r].id, static_cast<std::size_t>(d.wall));
    data.captures[r][static_cast<std::size_t>(d.wall)].doors.push_back(box);
  }

  for (std::size_t r = 0; r < rooms; ++r) {
    RoomEntry entry;
    entry.id = spec.rooms[r].id;
    for (std::size_t c = 0; c < 4; ++c) {
      CaptureEntry ce;
      ce.depth = fmt::format("{}/c{}_depth.png", entry.id, c);
      ce.edges = fmt::format("{}/c{}_edges.png", entry.id, c);
      ce.pose = data.captures[r][c].reported_pose;
      ce.doors = data.captures[r][c].doors;
      entry.captures.push_back(std::move(ce));
    }
    data.manifest.rooms.push_back(std::move(entry));
  }
  return data;
}

void write_dataset(const SynthDataset& data, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw InputError("synth", fmt::format("cannot create {}: {}", out_dir.string(), ec.message()));
  for (std::size_t r = 0; r < data.manifest.rooms.size(); ++r) {
    const RoomEntry& room = data.manifest.rooms[r];
    std::filesystem::create_directories(out_dir / room.id, ec);
    if (ec) throw InputError("synth", fmt::format("cannot create {}: {}", (out_dir / room.id).string(), ec.message()));
    for (std::size_t c = 0; c < room.captures.size(); ++c) {
      encode_depth(out_dir / room.captures[c].depth, data.captures[r][c].depth);
      encode_edge_mask(out_dir / room.captures[c].edges, data.captures[r][c].mask);
    }
  }
  write_manifest(out_dir / "manifest.json", data.manifest);
  write_ground_truth(out_dir / "ground_truth.json", data.truth);
}

}  // namespace planforge
