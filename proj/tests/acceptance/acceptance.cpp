// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "planforge/backprojection.hpp"
#include "planforge/doors.hpp"
#include "planforge/error.hpp"
#include "planforge/geometry.hpp"
#include "planforge/global_assemble.hpp"
#include "planforge/ingest.hpp"
#include "planforge/local_regularize.hpp"
#include "planforge/metrics.hpp"
#include "planforge/pipeline.hpp"
#include "planforge/plan_io.hpp"
#include "planforge/synth.hpp"
#include "support.hpp"

using namespace planforge;
using planforge::test::Gen;
using planforge::test::kPi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(const char* name, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("threw: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("%s  %-28s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  std::fflush(stdout);
}

// The pipeline reads rasters from disk, so every dataset goes through files.
ReconstructResult run_pipeline(const SynthDataset& data, const std::string& tag, const ReconstructOptions& opts = {}) {
  const std::filesystem::path dir = test::temp_dir("acceptance_" + tag);
  write_dataset(data, dir);
  return reconstruct(parse_manifest(dir / "manifest.json"), opts);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double max_angle_error(const FloorPlan& plan) {
  double worst = 0;
  for (const RoomPolygon& r : plan.rooms) {
    for (double a : geom::interior_angles(r.vertices())) {
      // Convex corners at 90 deg, reflex corners of L-rooms at 270 deg.
      worst = std::max(worst, std::min(std::abs(a - kPi / 2), std::abs(a - 1.5 * kPi)));
    }
  }
  return worst;
}

Outcome noiseless() {
  const FloorSpec spec = test::two_room_spec();
  const SynthDataset data = generate(spec);
  const auto t0 = std::chrono::steady_clock::now();
  const ReconstructResult res = run_pipeline(data, "noiseless");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const MetricsReport m = evaluate(res.plan, data.truth);
  const double angle = max_angle_error(res.plan);
  const bool ok = res.plan.rooms.size() == 2 && *m.area_mape_pct <= 1.0 && *m.aspect_mape_pct <= 1.0 &&
                  angle <= 1e-6 && secs < 10.0;
  return {ok, fmt("area %.3f%% aspect %.3f%% ", *m.area_mape_pct, *m.aspect_mape_pct) +
                  fmt("angle %.2e rad %.2f s", angle, secs)};
}

Outcome noisy() {
  double area = 0, aspect = 0;
  const int trials = 20;
  for (int t = 0; t < trials; ++t) {
    FloorSpec spec = test::two_room_spec();
    spec.noise = {0.02, 0.0, 1.0 * kPi / 180, 0.02};
    spec.seed = 1000 + t;
    const SynthDataset data = generate(spec);
    const MetricsReport m = evaluate(run_pipeline(data, "noisy").plan, data.truth);
    area += *m.area_mape_pct;
    aspect += *m.aspect_mape_pct;
  }
  area /= trials;
  aspect /= trials;
  return {area <= 6.0 && aspect <= 4.0, fmt("mean area %.3f%% aspect %.3f%% over 20 seeds", area, aspect)};
}

Outcome containment() {
  Gen g(2024);
  long pairs = 0, disagreements = 0, excluded = 0;
  while (pairs < 100000) {
    const std::vector<Vec2> poly = g.convex_polygon();
    const BoundaryPolygon b(poly);
    for (int i = 0; i < 20; ++i) {
      Vec2 p = g.point(-10, 10);
      if (i % 2 == 1) {
        // Just off a random edge, on either side, down to the exclusion band.
        const std::size_t k = static_cast<std::size_t>(g.integer(0, static_cast<int>(poly.size()) - 1));
        const Vec2 a = poly[k], b = poly[(k + 1) % poly.size()];
        const Vec2 n = geom::perp_ccw(b - a).normalized();
        const double off = std::pow(10.0, g.uniform(-7.5, -2.0)) * (g.integer(0, 1) ? 1.0 : -1.0);
        p = a + g.uniform(0, 1) * (b - a) + off * n;
      }
      if (geom::nearest_edge(p, poly).distance <= 1e-7) {
        ++excluded;
        continue;
      }
      const bool inside = point_in_boundary(p, b) == Containment::inside;
      disagreements += inside != (test::winding_number(p, poly) != 0);
      ++pairs;
    }
  }
  return {disagreements == 0, fmt("%.0f pairs, %.0f disagreements, %.0f near-edge skipped", pairs, disagreements,
                                   excluded)};
}

Outcome backprojection() {
  Gen g(2025);
  const CameraIntrinsics intr = default_intrinsics();
  const SceneScale scale = default_scale();
  double worst = 0;
  for (int i = 0; i < 10000; ++i) {
    const double u = g.uniform(0, intr.width - 1), v = g.uniform(0, intr.height - 1), d = g.uniform(1, 65535);
    const PixelDepth back = project_point(backproject_pixel(u, v, d, intr, scale), intr, scale);
    worst = std::max({worst, std::abs(back.u - u), std::abs(back.v - v), std::abs(back.d - d)});
  }
  return {worst <= 1e-9, fmt("10000 samples, max error %.2e", worst)};
}

Outcome perpendicularity() {
  Gen g(2026);
  double worst = 0;
  for (int i = 0; i < 10000; ++i) {
    ClusterResult c;
    c.means = {g.point(-10, 10), g.point(-10, 10), g.point(-10, 10)};
    const Wedge w = fit_wedge(c);
    worst = std::max(worst, std::abs(w.dir1.dot(w.dir2)));
  }
  return {worst < 1e-9, fmt("10000 triples, max |dir1.dir2| %.2e", worst)};
}

Outcome idempotence() {
  Gen g(2027);
  int checked = 0, broken = 0, skipped = 0;
  while (checked < 1000) {
    const double axis = g.uniform(-kPi / 4, kPi / 4);
    const RoomPolygon p("p", g.rough_rectilinear(axis, 3.0 * kPi / 180, 0.03));
    RoomPolygon once;
    try {
      once = snap_manhattan(p, axis);
    } catch (const GeometryError&) {
      ++skipped;
      continue;
    }
    ++checked;
    broken += snap_manhattan(once, axis).vertices() != once.vertices();
  }
  return {broken == 0, fmt("%.0f polygons, %.0f changed on re-snap, %.0f degenerate inputs skipped", checked, broken,
                           skipped)};
}

Outcome metrics_self_tests() {
  Gen g(2028);
  Image x(32, 24);
  for (double& p : x.pixels) p = std::round(g.uniform(0, 255));
  const double s = ssim(x, x);
  const double p = psnr_from_mse(1.0);
  const std::vector<Vec2> est{{3, 4}}, origin{{0, 0}};
  const double ce = corner_error(est, origin, 500);
  const std::vector<double> v{10.3}, gt{10.0};
  const double mp = mape(v, gt);
  const bool ok = std::abs(s - 1.0) < 1e-12 && std::abs(p - 48.1308) <= 1e-3 && std::abs(ce - 1.0) < 5e-5 &&
                  std::abs(mp - 3.0) < 5e-5;
  return {ok, fmt("ssim %.12f psnr %.4f dB corner %.4f%%", s, p, ce) + fmt(" mape %.4f%%", mp)};
}

Outcome doors() {
  double worst = 0;
  int fixtures = 0;
  bool invariant = true;
  for (int wall = 0; wall < 4; ++wall) {
    for (double offset : {0.2, 0.35, 0.5, 0.71}) {
      FloorSpec spec = test::single_room_spec(4.0, 3.0);
      spec.doors = {{"room", wall, offset, 0.8}};
      const SynthDataset data = generate(spec);
      const GroundTruthRoom& room = data.truth.rooms[0];
      const RoomPolygon poly(room.id, room.corners);
      const DoorBox& box = data.captures[0][wall].doors.at(0);
      const int w = wall_at_corner(poly, room.corners[wall], *box.corner_wall);
      const double ratio = wall_ratio_from_image(door_ratio(box));
      const DoorPlacement d = place_door(ratio, poly, w, door_width_from_box(box, poly.wall_length(w)));
      worst = std::max(worst, (d.center - data.truth.doors[0].center).norm());
      ++fixtures;

      std::vector<Vec2> doubled = room.corners;
      for (Vec2& c : doubled) c *= 2.0;
      const RoomPolygon big(room.id, doubled);
      const DoorPlacement d2 = place_door(ratio, big, w, 2 * d.width);
      invariant = invariant && std::abs(d2.ratio - d.ratio) < 1e-12 && (d2.center - 2.0 * d.center).norm() < 1e-9;
    }
  }
  return {worst <= 1e-9 && invariant, fmt("%.0f fixtures, max offset error %.2e m, x2 scaling ", fixtures, worst) +
                                          (invariant ? "invariant" : "NOT invariant")};
}

Outcome occlusion() {
  FloorSpec spec = test::two_room_spec();
  // Low cabinet filling the living room's far corner.
  spec.occluders = {{{3.2, 2.4}, {4.0, 3.0}, 0.9}};
  const SynthDataset data = generate(spec);
  const MetricsReport m = evaluate(run_pipeline(data, "occlusion").plan, data.truth);
  return {*m.area_mape_pct <= 8.0, fmt("area %.3f%% aspect %.3f%%", *m.area_mape_pct, *m.aspect_mape_pct)};
}

Outcome determinism() {
  FloorSpec spec = test::two_room_spec();
  spec.noise = {0.02, 0.0, 1.0 * kPi / 180, 0.02};
  ReconstructOptions opts;
  opts.seed = 42;
  const std::string a = emit_plan(run_pipeline(generate(spec), "det_a", opts).plan);
  const std::string b = emit_plan(run_pipeline(generate(spec), "det_b", opts).plan);
  return {a == b, fmt("%.0f bytes, identical: ", static_cast<double>(a.size())) + (a == b ? "yes" : "no")};
}

}  // namespace

int main() {
  report("end-to-end noiseless", noiseless);
  report("end-to-end noisy", noisy);
  report("containment oracle", containment);
  report("back-projection round trip", backprojection);
  report("fit_wedge perpendicularity", perpendicularity);
  report("snap_manhattan idempotence", idempotence);
  report("metrics self-tests", metrics_self_tests);
  report("door placement", doors);
  report("occlusion probe", occlusion);
  report("determinism", determinism);
  std::printf("%d failed\n", failures);
  return failures == 0 ? 0 : 1;
}
