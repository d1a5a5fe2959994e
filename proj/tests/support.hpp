#pragma once

// Hand-rolled generators and fixtures shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "planforge/geometry.hpp"
#include "planforge/synth.hpp"
#include "planforge/types.hpp"

namespace planforge::test {

inline constexpr double kPi = std::numbers::pi;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return lo + (hi - lo) * (static_cast<double>(rng_() >> 11) * 0x1.0p-53); }
  int integer(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  double normal(double sigma) {
    double u1 = uniform(0.0, 1.0);
    while (u1 <= 0.0) u1 = uniform(0.0, 1.0);
    return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * uniform(0.0, 1.0));
  }
  Vec2 point(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi)}; }
  Vec2 unit() {
    const double a = uniform(-kPi, kPi);
    return {std::cos(a), std::sin(a)};
  }

  // Convex polygon: sorted angles on a jittered ellipse, then hulled.
  std::vector<Vec2> convex_polygon(int min_vertices = 3, int max_vertices = 12) {
    for (;;) {
      const int n = integer(min_vertices, max_vertices);
      const Vec2 c = point(-5.0, 5.0);
      const double rx = uniform(0.5, 4.0);
      const double ry = uniform(0.5, 4.0);
      std::vector<Vec2> pts;
      for (int i = 0; i < n; ++i) {
        const double a = uniform(0.0, 2.0 * kPi);
        pts.push_back(c + Vec2(rx * std::cos(a), ry * std::sin(a)));
      }
      std::vector<Vec2> hull = geom::convex_hull(pts);
      if (hull.size() >= 3 && geom::polygon_area(hull) > 1e-3) return hull;
    }
  }

  // Simple polygon: star-shaped around a centre with sorted angles.
  std::vector<Vec2> star_polygon(int min_vertices = 4, int max_vertices = 10) {
    const int n = integer(min_vertices, max_vertices);
    std::vector<double> angles;
    for (int i = 0; i < n; ++i) angles.push_back(uniform(0.0, 2.0 * kPi));
    std::sort(angles.begin(), angles.end());
    std::vector<Vec2> pts;
    for (double a : angles) pts.push_back(uniform(1.0, 3.0) * Vec2(std::cos(a), std::sin(a)));
    return pts;
  }

  // Axis-aligned rectangle rotated by a small angle with jittered corners.
  std::vector<Vec2> noisy_rectangle(double max_tilt_rad, double jitter) {
    const double w = uniform(2.0, 6.0);
    const double h = uniform(2.0, 6.0);
    const double tilt = uniform(-max_tilt_rad, max_tilt_rad);
    std::vector<Vec2> pts{{0, 0}, {w, 0}, {w, h}, {0, h}};
    for (Vec2& p : pts) p = geom::rotate(p + Vec2(normal(jitter), normal(jitter)), tilt);
    return pts;
  }

  // Rectangle or L-shape (6 vertices) in the frame rotated by `axis`, each
  // vertex jittered and the whole outline tilted by up to max_tilt_rad.
  std::vector<Vec2> rough_rectilinear(double axis, double max_tilt_rad, double jitter) {
    const double w = uniform(2.0, 6.0);
    const double h = uniform(2.0, 6.0);
    std::vector<Vec2> pts;
    if (integer(0, 1) == 0) {
      pts = {{0, 0}, {w, 0}, {w, h}, {0, h}};
    } else {
      const double cx = uniform(0.3, 0.7) * w;
      const double cy = uniform(0.3, 0.7) * h;
      pts = {{0, 0}, {w, 0}, {w, cy}, {cx, cy}, {cx, h}, {0, h}};
    }
    const double tilt = axis + uniform(-max_tilt_rad, max_tilt_rad);
    const Vec2 shift = point(-10.0, 10.0);
    for (Vec2& p : pts) p = geom::rotate(p + Vec2(normal(jitter), normal(jitter)), tilt) + shift;
    return pts;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Winding number of a closed polygon about p; independent of the ray-cast code.
inline int winding_number(const Vec2& p, const std::vector<Vec2>& poly) {
  int wn = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    const double side = (b.x() - a.x()) * (p.y() - a.y()) - (p.x() - a.x()) * (b.y() - a.y());
    if (a.y() <= p.y()) {
      if (b.y() > p.y() && side > 0) ++wn;
    } else if (b.y() <= p.y() && side < 0) {
      --wn;
    }
  }
  return wn;
}

inline std::filesystem::path temp_dir(const std::string& name) {
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / ("planforge_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// The bundled two-room layout: 4x3 m and 3x3 m sharing a wall, one door.
inline FloorSpec two_room_spec() {
  FloorSpec s;
  s.rooms = {{"living", {0.0, 0.0}, {4.0, 3.0}}, {"study", {4.0, 0.0}, {7.0, 3.0}}};
  s.doors = {{"living", 1, 0.5, 0.9}};
  s.seed = 7;
  return s;
}

inline FloorSpec single_room_spec(double w = 4.0, double h = 3.0) {
  FloorSpec s;
  s.rooms = {{"room", {0.0, 0.0}, {w, h}}};
  return s;
}

}  // namespace planforge::test
