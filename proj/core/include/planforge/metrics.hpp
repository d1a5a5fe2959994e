#pragma once

#include <span>
#include <utility>
#include <vector>

#include "planforge/types.hpp"

namespace planforge {

// Single-channel image of doubles, row-major.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<double> pixels;

  Image() = default;
  Image(int w, int h, double fill = 0.0) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}
  double& at(int u, int v) { return pixels[static_cast<std::size_t>(v) * width + u]; }
  double at(int u, int v) const { return pixels[static_cast<std::size_t>(v) * width + u]; }
};

// Global (single window) SSIM with explicit stabilizers.
double ssim(const Image& x, const Image& y, double c1, double c2);
// c1 = (0.01 L)^2, c2 = (0.03 L)^2.
double ssim(const Image& x, const Image& y, double dynamic_range = 255.0);

double mean_squared_error(const Image& reference, const Image& generated);
// +infinity when the images are identical.
double psnr_from_mse(double mse, double max_value = 255.0);
double psnr(const Image& reference, const Image& generated, double max_value = 255.0);

// Percentage of pixels whose edge membership differs.
double pixel_error(const EdgeMask& est, const EdgeMask& gt);
// Mean over image pairs.
double pixel_error(std::span<const std::pair<EdgeMask, EdgeMask>> pairs);

// Minimum-cost perfect matching on a square cost matrix; result[i] is the
// column assigned to row i.
std::vector<int> hungarian(const std::vector<std::vector<double>>& cost);

// Mean corner displacement over the image diagonal, in percent, with corners
// matched by optimal assignment on Euclidean distance.
double corner_error(std::span<const Vec2> est, std::span<const Vec2> gt, double diag);

// Mean absolute percentage error.
double mape(std::span<const double> values, std::span<const double> gt);

}  // namespace planforge
