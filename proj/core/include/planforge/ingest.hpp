#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "planforge/types.hpp"

namespace planforge {

struct CaptureEntry {
  std::string depth;  // raster paths as written in the manifest, relative to its directory
  std::string edges;
  CapturePose pose;
  std::vector<DoorBox> doors;

  bool operator==(const CaptureEntry&) const = default;
};

struct RoomEntry {
  std::string id;
  std::vector<CaptureEntry> captures;

  bool operator==(const RoomEntry&) const = default;
};

// One floor: shared camera model and scale, rooms with their corner captures.
struct DatasetManifest {
  int version = 1;
  CameraIntrinsics intrinsics;
  SceneScale scale;
  std::vector<RoomEntry> rooms;
  std::filesystem::path base_dir;  // directory the raster paths are relative to

  std::filesystem::path resolve(const std::string& relative) const { return base_dir / relative; }
  static std::string capture_id(const std::string& room, std::size_t index);

  // Checks every contained invariant; with check_files, also that rasters exist.
  void validate(bool check_files) const;

  bool operator==(const DatasetManifest& o) const;
};

DatasetManifest parse_manifest(const std::filesystem::path& path);
DatasetManifest parse_manifest_text(const std::string& text, const std::filesystem::path& base_dir,
                                    bool check_files = true);
std::string emit_manifest(const DatasetManifest& manifest);
void write_manifest(const std::filesystem::path& path, const DatasetManifest& manifest);

// Reads a 16-bit depth raster. Raw values pass through untouched; the scale
// is only validated here and applied at back-projection.
DepthMap decode_depth(const std::filesystem::path& path, const SceneScale& scale, const CameraIntrinsics& intr);

// Reads an 8-bit mask: 0 -> other, 128 -> wall, 255 -> edge.
EdgeMask decode_edge_mask(const std::filesystem::path& path);

void encode_depth(const std::filesystem::path& path, const DepthMap& depth);
void encode_edge_mask(const std::filesystem::path& path, const EdgeMask& mask);

// Steepest camera pitch the plan reduction accepts.
inline constexpr double kMaxPitchDeg = 80.0;

// Yaw from the horizontal projection of the camera's forward axis; the plan
// translation is the session (x, z) pair.
PlanTransform reduce_pose(const CapturePose& pose);

// Applies a rotation about the up axis in the session frame (left-multiplies).
CapturePose rotate_about_up(const CapturePose& pose, double yaw);

}  // namespace planforge
