#pragma once

#include <filesystem>
#include <string>

#include "planforge/synth.hpp"
#include "planforge/types.hpp"

namespace planforge {

// Structured-text files; coordinates in meters rounded to 6 decimals.

std::string emit_plan(const FloorPlan& plan);
FloorPlan parse_plan_text(const std::string& text);
void write_plan(const std::filesystem::path& path, const FloorPlan& plan);
FloorPlan read_plan(const std::filesystem::path& path);

std::string emit_ground_truth(const GroundTruth& gt);
GroundTruth parse_ground_truth_text(const std::string& text);
void write_ground_truth(const std::filesystem::path& path, const GroundTruth& gt);
GroundTruth read_ground_truth(const std::filesystem::path& path);

std::string emit_metrics(const MetricsReport& report);

// FloorSpec optionally carries "intrinsics" and "scale_s"; absent keys fall
// back to default_intrinsics() / default_scale().
struct FloorSpecFile {
  FloorSpec spec;
  CameraIntrinsics intrinsics = default_intrinsics();
  SceneScale scale = default_scale();
};

FloorSpecFile parse_floor_spec_text(const std::string& text);
FloorSpecFile read_floor_spec(const std::filesystem::path& path);
std::string emit_floor_spec(const FloorSpecFile& file);

std::string read_text_file(const std::filesystem::path& path, const char* stage);
void write_text_file(const std::filesystem::path& path, const std::string& text, const char* stage);

}  // namespace planforge
