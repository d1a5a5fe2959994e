// planforge: reconstruct | eval | synth | render
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "planforge/error.hpp"
#include "planforge/ingest.hpp"
#include "planforge/pipeline.hpp"
#include "planforge/plan_io.hpp"
#include "planforge/svg.hpp"
#include "planforge/synth.hpp"

namespace fs = std::filesystem;
using namespace planforge;

namespace {

struct ReconstructArgs {
  std::string manifest;
  std::string plan_out;
  std::string svg_out;
  std::string intermediates;
  std::string fit = "means";
  ReconstructOptions opts;
};

int cmd_reconstruct(ReconstructArgs& a) {
  if (!a.intermediates.empty()) a.opts.intermediates_dir = a.intermediates;
  a.opts.fit = a.fit == "lines" ? WedgeFit::lines : WedgeFit::means;
  const DatasetManifest manifest = parse_manifest(a.manifest);
  const ReconstructResult result = reconstruct(manifest, a.opts);
  write_plan(a.plan_out, result.plan);
  if (!a.svg_out.empty()) write_svg(a.svg_out, result.plan);
  for (const RoomPolygon& r : result.plan.rooms) std::cout << fmt::format("{} {:.3f} m^2\n", r.id(), r.area());
  return 0;
}

int cmd_eval(const std::string& plan_path, const std::string& gt_path, const std::string& out) {
  const FloorPlan plan = read_plan(plan_path);
  const GroundTruth gt = read_ground_truth(gt_path);
  const std::string report = emit_metrics(evaluate(plan, gt));
  if (out.empty()) {
    std::cout << report;
  } else {
    write_text_file(out, report, "eval");
  }
  return 0;
}

int cmd_synth(const std::string& spec_path, const std::string& out_dir, std::optional<std::uint64_t> seed) {
  FloorSpecFile file = read_floor_spec(spec_path);
  if (seed) file.spec.seed = *seed;
  const SynthDataset data = generate(file.spec, file.intrinsics, file.scale);
  write_dataset(data, out_dir);
  std::size_t captures = 0;
  for (const RoomEntry& r : data.manifest.rooms) captures += r.captures.size();
  std::cout << fmt::format("{} rooms, {} captures -> {}\n", data.manifest.rooms.size(), captures, out_dir);
  return 0;
}

int cmd_render(const std::string& plan_path, const std::string& svg_path) {
  write_svg(svg_path, read_plan(plan_path));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"planforge: Manhattan floor plans from corner captures"};
  app.require_subcommand(1);

  ReconstructArgs rec;
  auto* r = app.add_subcommand("reconstruct", "Build a floor plan from a capture manifest");
  r->add_option("manifest", rec.manifest, "Manifest file")->required();
  r->add_option("-o,--out", rec.plan_out, "Plan output file")->required();
  r->add_option("--svg", rec.svg_out, "Also render the plan as SVG");
  r->add_option("--seed", rec.opts.seed, "Clustering seed")->capture_default_str();
  r->add_option("--snap-dist", rec.opts.snap_dist, "Boundary alignment reach, meters")->capture_default_str();
  r->add_option("--snap-angle-deg", rec.opts.snap_angle_deg, "Corner squareness tolerance, degrees")
      ->capture_default_str();
  r->add_option("--max-points", rec.opts.max_points, "Edge points kept per capture")->capture_default_str();
  r->add_option("--hull-eps", rec.opts.hull_eps, "Boundary band around the hull, meters")->capture_default_str();
  r->add_option("--lloyd-tol", rec.opts.lloyd_tol, "k-means convergence, meters")->capture_default_str();
  r->add_option("--wedge-fit", rec.fit, "Wall fit per capture: lines or means")
      ->check(CLI::IsMember({"lines", "means"}))
      ->capture_default_str();
  r->add_option("--keep-intermediates", rec.intermediates, "Directory for per-stage clouds and wedges");

  std::string plan_path, gt_path, report_out;
  auto* e = app.add_subcommand("eval", "Compare a plan against ground truth");
  e->add_option("plan", plan_path, "Plan file")->required();
  e->add_option("truth", gt_path, "Ground truth file")->required();
  e->add_option("-o,--out", report_out, "Write the report here instead of stdout");

  std::string spec_path, out_dir;
  std::optional<std::uint64_t> synth_seed;
  auto* s = app.add_subcommand("synth", "Render a synthetic dataset from a floor spec");
  s->add_option("spec", spec_path, "Floor spec file")->required();
  s->add_option("out_dir", out_dir, "Output directory")->required();
  s->add_option("--seed", synth_seed, "Override the spec's noise seed");

  std::string render_plan, render_svg_path;
  auto* d = app.add_subcommand("render", "Draw a plan as SVG");
  d->add_option("plan", render_plan, "Plan file")->required();
  d->add_option("svg", render_svg_path, "SVG output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (r->parsed()) return cmd_reconstruct(rec);
    if (e->parsed()) return cmd_eval(plan_path, gt_path, report_out);
    if (s->parsed()) return cmd_synth(spec_path, out_dir, synth_seed);
    if (d->parsed()) return cmd_render(render_plan, render_svg_path);
  } catch (const Error& err) {
    std::cerr << fmt::format("error [{}]: {}\n", err.stage(), err.what());
    return static_cast<int>(err.kind());
  } catch (const std::exception& err) {
    std::cerr << fmt::format("error: {}\n", err.what());
    return 2;
  }
  return 1;
}
