#include "planforge/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "planforge/error.hpp"

namespace planforge {
namespace {

void same_size(int w1, int h1, int w2, int h2) {
  if (w1 != w2 || h1 != h2) {
    throw InputError("metrics", fmt::format("dimension mismatch: {}x{} vs {}x{}", w1, h1, w2, h2));
  }
  if (w1 <= 0 || h1 <= 0) throw InputError("metrics", "empty image");
}

}  // namespace

double ssim(const Image& x, const Image& y, double c1, double c2) {
  same_size(x.width, x.height, y.width, y.height);
  const double n = static_cast<double>(x.pixels.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.pixels.size(); ++i) {
    mx += x.pixels[i];
    my += y.pixels[i];
  }
  mx /= n;
  my /= n;
  double vx = 0.0;
  double vy = 0.0;
  double cov = 0.0;
  for (std::size_t i = 0; i < x.pixels.size(); ++i) {
    const double dx = x.pixels[i] - mx;
    const double dy = y.pixels[i] - my;
    vx += dx * dx;
    vy += dy * dy;
    cov += dx * dy;
  }
  vx /= n;
  vy /= n;
  cov /= n;
  return ((2 * mx * my + c1) * (2 * cov + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
}

double ssim(const Image& x, const Image& y, double dynamic_range) {
  const double c1 = (0.01 * dynamic_range) * (0.01 * dynamic_range);
  const double c2 = (0.03 * dynamic_range) * (0.03 * dynamic_range);
  return ssim(x, y, c1, c2);
}

double mean_squared_error(const Image& reference, const Image& generated) {
  same_size(reference.width, reference.height, generated.width, generated.height);
  double sum = 0.0;
  for (std::size_t i = 0; i < reference.pixels.size(); ++i) {
    const double d = reference.pixels[i] - generated.pixels[i];
    sum += d * d;
  }
  return sum / static_cast<double>(reference.pixels.size());
}

double psnr_from_mse(double mse, double max_value) {
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(max_value) - 10.0 * std::log10(mse);
}

double psnr(const Image& reference, const Image& generated, double max_value) {
  return psnr_from_mse(mean_squared_error(reference, generated), max_value);
}

double pixel_error(const EdgeMask& est, const EdgeMask& gt) {
  same_size(est.width, est.height, gt.width, gt.height);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < est.labels.size(); ++i) {
    if ((est.labels[i] == Label::edge) != (gt.labels[i] == Label::edge)) ++bad;
  }
  return 100.0 * static_cast<double>(bad) / static_cast<double>(est.labels.size());
}

double pixel_error(std::span<const std::pair<EdgeMask, EdgeMask>> pairs) {
  if (pairs.empty()) throw InputError("metrics", "no image pairs");
  double sum = 0.0;
  for (const auto& [est, gt] : pairs) sum += pixel_error(est, gt);
  return sum / static_cast<double>(pairs.size());
}

// Shortest augmenting path with potentials, O(n^3).
std::vector<int> hungarian(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> assign(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (p[j] > 0) assign[p[j] - 1] = j - 1;
  }
  return assign;
}

double corner_error(std::span<const Vec2> est, std::span<const Vec2> gt, double diag) {
  if (est.size() != gt.size()) {
    throw InputError("metrics", fmt::format("corner count mismatch: {} estimated vs {} ground truth", est.size(), gt.size()));
  }
  if (est.empty()) throw InputError("metrics", "no corners");
  if (!(diag > 0.0)) throw InputError("metrics", "diagonal must be positive");
  std::vector<std::vector<double>> cost(est.size(), std::vector<double>(gt.size()));
  for (std::size_t i = 0; i < est.size(); ++i) {
    for (std::size_t j = 0; j < gt.size(); ++j) cost[i][j] = (est[i] - gt[j]).norm();
  }
  const std::vector<int> match = hungarian(cost);
  double sum = 0.0;
  for (std::size_t i = 0; i < est.size(); ++i) sum += cost[i][static_cast<std::size_t>(match[i])];
  return 100.0 * sum / (static_cast<double>(est.size()) * diag);
}

double mape(std::span<const double> values, std::span<const double> gt) {
  if (values.size() != gt.size()) {
    throw InputError("metrics", fmt::format("length mismatch: {} values vs {} ground truth", values.size(), gt.size()));
  }
  if (values.empty()) throw InputError("metrics", "empty input");
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (gt[i] == 0.0) throw InputError("metrics", fmt::format("zero ground truth at index {}", i));
    sum += std::abs(gt[i] - values[i]) / std::abs(gt[i]);
  }
  return 100.0 * sum / static_cast<double>(values.size());
}

}  // namespace planforge
