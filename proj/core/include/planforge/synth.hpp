#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "planforge/ingest.hpp"
#include "planforge/types.hpp"

namespace planforge {

struct SynthRoom {
  std::string id;
  Vec2 min = Vec2::Zero();  // plan meters
  Vec2 max = Vec2::Zero();

  // Counter-clockwise from min.
  std::vector<Vec2> corners() const;
};

struct SynthDoor {
  std::string room_id;
  int wall = 0;          // index into the room's counter-clockwise walls
  double offset = 0.5;   // door centre as a fraction of the wall from its first corner
  double width = 0.9;    // meters
};

// Furniture: an axis-aligned box standing on the floor.
struct Occluder {
  Vec2 min = Vec2::Zero();
  Vec2 max = Vec2::Zero();
  double height = 0.0;
};

struct NoiseSpec {
  double depth_sigma = 0.0;        // per-capture depth scale error, fraction of depth
  double depth_pixel_sigma = 0.0;  // independent per-pixel error, fraction of depth
  double yaw_sigma = 0.0;          // radians, reported pose
  double translation_sigma = 0.0;  // meters per plan axis, reported pose

  bool operator==(const NoiseSpec&) const = default;
};

struct FloorSpec {
  std::vector<SynthRoom> rooms;
  std::vector<SynthDoor> doors;
  std::vector<Occluder> occluders;
  double camera_height = 1.3;
  double ceiling_height = 2.7;
  NoiseSpec noise;
  std::uint64_t seed = 0;

  void validate() const;
};

inline constexpr double kJunctionBand = 0.03;   // meters
inline constexpr double kCameraBackoff = 0.5;   // meters from room centre, away from the target corner
inline constexpr double kMinRoomSide = 1.5;     // meters
inline constexpr double kDoorHeight = 2.0;      // meters

CameraIntrinsics default_intrinsics();
SceneScale default_scale();

struct GroundTruthRoom {
  std::string id;
  std::vector<Vec2> corners;  // counter-clockwise
  double area = 0.0;
  double aspect = 0.0;  // long side over short side
};

struct GroundTruthDoor {
  std::string room_id;
  int wall = 0;
  double offset = 0.0;  // fraction from the wall's first corner
  double width = 0.0;
  Vec2 center = Vec2::Zero();
};

struct GroundTruth {
  std::vector<GroundTruthRoom> rooms;
  std::vector<GroundTruthDoor> doors;

  const GroundTruthRoom* find(const std::string& id) const;
};

GroundTruth ground_truth(const FloorSpec& spec);

// Per-room area, aspect and corners, sorted by room id.
std::vector<GroundTruthRoom> ground_truth_report(const GroundTruth& gt);

struct SynthCapture {
  DepthMap depth;                 // quantized, noisy
  std::vector<double> depth_m;    // noiseless Z in meters, 0 where nothing was hit
  EdgeMask mask;
  CapturePose true_pose;
  CapturePose reported_pose;
  std::vector<DoorBox> doors;
};

struct SynthDataset {
  DatasetManifest manifest;
  GroundTruth truth;
  std::vector<std::vector<SynthCapture>> captures;  // [room][corner]
};

// Pose of the camera facing corner `corner` of `room`, in the session frame
// (plan x = session x, plan y = session z, y down, floor at y = 0).
CapturePose corner_pose(const SynthRoom& room, int corner, double camera_height);

SynthDataset generate(const FloorSpec& spec, const CameraIntrinsics& intr = default_intrinsics(),
                      const SceneScale& scale = default_scale());

// Writes manifest.json, ground_truth.json and one depth and one mask PNG per
// capture under out_dir.
void write_dataset(const SynthDataset& data, const std::filesystem::path& out_dir);

}  // namespace planforge
