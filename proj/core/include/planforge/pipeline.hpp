#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "planforge/ingest.hpp"
#include "planforge/metrics.hpp"
#include "planforge/synth.hpp"
#include "planforge/types.hpp"

namespace planforge {

enum class WedgeFit {
  means,  // straight line through the cluster means
  lines,  // total-least-squares wall lines through the outer clusters
};

struct ReconstructOptions {
  std::uint64_t seed = 0;
  double snap_dist = 0.3;
  double snap_angle_deg = 5.0;
  std::size_t max_points = 50'000;
  double hull_eps = 0.02;
  double lloyd_tol = 1e-6;
  WedgeFit fit = WedgeFit::means;
  std::optional<std::filesystem::path> intermediates_dir;
};

struct CaptureResult {
  std::string capture_id;
  PlanTransform xform;
  std::size_t edge_points = 0;
  Wedge local;   // in the capture's own plan frame
  Wedge placed;  // in the session plan frame
};

struct ReconstructResult {
  FloorPlan plan;
  std::vector<std::vector<CaptureResult>> captures;  // manifest order
};

// Per-capture back-projection to placed wedge. Errors name the capture.
CaptureResult process_capture(const DepthMap& depth, const EdgeMask& mask, const CameraIntrinsics& intr,
                              const SceneScale& scale, const CapturePose& pose, const std::string& capture_id,
                              std::uint64_t seed, const ReconstructOptions& opts);

// Wedges (per room, in order) to a floor plan with door placements.
FloorPlan assemble_floor(const std::vector<std::string>& room_ids, const std::vector<std::vector<Wedge>>& wedges,
                         const std::vector<std::vector<PlanTransform>>& xforms,
                         const std::vector<std::vector<std::vector<DoorBox>>>& doors, const CameraIntrinsics& intr,
                         const ReconstructOptions& opts);

ReconstructResult reconstruct(const DatasetManifest& manifest, const ReconstructOptions& opts = {});

struct EvalOptions {
  double raster_resolution = 0.02;  // meters per pixel for the image metrics
  double wall_thickness_px = 3.0;
};

// Rooms are matched by id; every plan room must exist in the ground truth.
MetricsReport evaluate(const FloorPlan& plan, const GroundTruth& truth, const EvalOptions& opts = {});

// Wall outlines of the given rooms drawn into a mask covering [lo, hi].
EdgeMask rasterize_walls(const std::vector<std::vector<Vec2>>& rooms, const Vec2& lo, const Vec2& hi,
                         double resolution, double thickness_px);

}  // namespace planforge
