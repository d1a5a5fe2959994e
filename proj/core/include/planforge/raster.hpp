#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace planforge {

// Single-channel PNG contents; samples are widened to 16 bits regardless of
// the stored depth, which is reported in bit_depth.
struct GrayRaster {
  int width = 0;
  int height = 0;
  int bit_depth = 0;
  std::vector<std::uint16_t> samples;
};

// Throws InputError on unreadable files, colour images or palette images.
GrayRaster read_gray_png(const std::filesystem::path& path);

// bit_depth must be 8 or 16; samples must fit.
void write_gray_png(const std::filesystem::path& path, const GrayRaster& raster);

}  // namespace planforge
