#pragma once

#include <filesystem>
#include <string>

#include "planforge/types.hpp"

namespace planforge {

struct SvgOptions {
  double pixels_per_meter = 80.0;
  double margin_m = 0.75;
  bool upright = true;  // rotate by -axis so walls run along the page edges
};

// Rooms, boundary, door symbols (leaf + swing arc), a 1 m grid and a scale bar.
std::string render_svg(const FloorPlan& plan, const SvgOptions& opts = {});

void write_svg(const std::filesystem::path& path, const FloorPlan& plan, const SvgOptions& opts = {});

}  // namespace planforge
