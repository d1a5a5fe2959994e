#include "planforge/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "planforge/backprojection.hpp"
#include "planforge/doors.hpp"
#include "planforge/error.hpp"
#include "planforge/geometry.hpp"
#include "planforge/global_assemble.hpp"
#include "planforge/local_regularize.hpp"
#include "planforge/parallel.hpp"

namespace planforge {
namespace {

[[noreturn]] void rethrow_for(const Error& e, const std::string& capture_id) {
  throw Error(e.kind(), e.stage(), fmt::format("{}: {}", capture_id, e.what()));
}

std::string file_safe(const std::string& id) {
  std::string s = id;
  std::replace(s.begin(), s.end(), '#', '_');
  return s;
}

void dump_points(const std::filesystem::path& path, const PointSet2D& pts) {
  std::ofstream out(path);
  if (!out) throw InputError("pipeline", fmt::format("cannot write {}", path.string()));
  for (const Vec2& p : pts.points) out << fmt::format("{:.6f} {:.6f}\n", p.x(), p.y());
}

}  // namespace

CaptureResult process_capture(const DepthMap& depth, const EdgeMask& mask, const CameraIntrinsics& intr,
                              const SceneScale& scale, const CapturePose& pose, const std::string& capture_id,
                              std::uint64_t seed, const ReconstructOptions& opts) {
  CaptureResult r;
  r.capture_id = capture_id;
  try {
    const LabeledCloud cloud = backproject_capture(depth, mask, intr, scale, capture_id);
    r.xform = reduce_pose(pose);
    const PointSet2D local = decimate(project_to_plan(cloud, PlanTransform{}), opts.max_points);
    r.edge_points = local.size();
    if (opts.intermediates_dir) {
      write_cloud_xyz(*opts.intermediates_dir / (file_safe(capture_id) + "_cloud.xyz"), cloud);
      dump_points(*opts.intermediates_dir / (file_safe(capture_id) + "_plan.xy"), local);
    }
    RegularizeOptions ro;
    ro.hull_eps = opts.hull_eps;
    ro.lloyd_tol = opts.lloyd_tol;
    ro.least_squares_lines = opts.fit == WedgeFit::lines;
    r.local = regularize_capture(local, seed, ro);
    r.placed = place_wedge(r.local, r.xform);
  } catch (const Error& e) {
    rethrow_for(e, capture_id);
  }
  return r;
}

FloorPlan assemble_floor(const std::vector<std::string>& room_ids, const std::vector<std::vector<Wedge>>& wedges,
                         const std::vector<std::vector<PlanTransform>>& xforms,
                         const std::vector<std::vector<std::vector<DoorBox>>>& doors, const CameraIntrinsics& intr,
                         const ReconstructOptions& opts) {
  AssembleOptions ao;
  ao.snap_angle_deg = opts.snap_angle_deg;
  ao.snap_dist = opts.snap_dist;

  std::vector<Wedge> all;
  for (const auto& w : wedges) all.insert(all.end(), w.begin(), w.end());
  const double axis = estimate_manhattan_axis(all);

  std::vector<RoomPolygon> rooms(room_ids.size());
  parallel_for(room_ids.size(), [&](std::size_t i) {
    rooms[i] = snap_manhattan(assemble_room(wedges[i], room_ids[i], axis, ao), axis, ao);
  });
  rooms = reconcile_shared_walls(std::move(rooms), axis, opts.snap_dist);
  const BoundaryPolygon hull = boundary_hull(rooms);
  for (RoomPolygon& r : rooms) r = align_to_boundary(r, hull, opts.snap_dist, axis, ao);
  BoundaryPolygon boundary = boundary_hull(rooms);

  std::vector<DoorPlacement> placed;
  for (std::size_t i = 0; i < rooms.size(); ++i) {
    for (std::size_t j = 0; j < doors[i].size(); ++j) {
      const std::string capture_id = DatasetManifest::capture_id(room_ids[i], j);
      try {
        for (const DoorBox& box : doors[i][j]) {
          const double ratio = wall_ratio_from_image(door_ratio(box));
          int wall = 0;
          if (box.corner_wall) {
            wall = wall_at_corner(rooms[i], wedges[i][j].apex, *box.corner_wall);
          } else {
            const std::optional<int> hit = wall_hit_by_column(rooms[i], xforms[i][j], intr, box.centroid_u());
            if (!hit) throw GeometryError("doors", "door outside wall: no wall along the door column");
            wall = *hit;
          }
          const double len = rooms[i].wall_length(static_cast<std::size_t>(wall));
          double width = door_width_from_box(box, len);
          if (!(width > 0.0 && width < len)) width = std::min(kDefaultDoorWidth, 0.5 * len);
          placed.push_back(place_door(ratio, rooms[i], wall, width));
        }
      } catch (const Error& e) {
        rethrow_for(e, capture_id);
      }
    }
  }

  // Output order is by room id; doors keep capture order within a room.
  std::vector<std::size_t> order(rooms.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return room_ids[a] < room_ids[b]; });
  std::vector<RoomPolygon> sorted_rooms;
  std::vector<DoorPlacement> sorted_doors;
  for (std::size_t i : order) {
    sorted_rooms.push_back(rooms[i]);
    for (const DoorPlacement& d : placed) {
      if (d.room_id == room_ids[i]) sorted_doors.push_back(d);
    }
  }
  return build_floorplan(std::move(sorted_rooms), std::move(boundary), std::move(sorted_doors), axis, ao);
}

ReconstructResult reconstruct(const DatasetManifest& manifest, const ReconstructOptions& opts) {
  manifest.validate(true);
  if (opts.intermediates_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*opts.intermediates_dir, ec);
    if (ec) throw InputError("pipeline", fmt::format("cannot create {}", opts.intermediates_dir->string()));
  }

  struct Job {
    std::size_t room;
    std::size_t capture;
  };
  std::vector<Job> jobs;
  ReconstructResult result;
  result.captures.resize(manifest.rooms.size());
  for (std::size_t r = 0; r < manifest.rooms.size(); ++r) {
    result.captures[r].resize(manifest.rooms[r].captures.size());
    for (std::size_t c = 0; c < manifest.rooms[r].captures.size(); ++c) jobs.push_back({r, c});
  }

  parallel_for(jobs.size(), [&](std::size_t k) {
    const auto [r, c] = jobs[k];
    const RoomEntry& room = manifest.rooms[r];
    const CaptureEntry& entry = room.captures[c];
    const std::string id = DatasetManifest::capture_id(room.id, c);
    DepthMap depth;
    EdgeMask mask;
    try {
      depth = decode_depth(manifest.resolve(entry.depth), manifest.scale, manifest.intrinsics);
      mask = decode_edge_mask(manifest.resolve(entry.edges));
    } catch (const Error& e) {
      rethrow_for(e, id);
    }
    result.captures[r][c] = process_capture(depth, mask, manifest.intrinsics, manifest.scale, entry.pose, id,
                                            stream_seed(opts.seed, r, c), opts);
  });

  std::vector<std::string> ids;
  std::vector<std::vector<Wedge>> wedges(manifest.rooms.size());
  std::vector<std::vector<PlanTransform>> xforms(manifest.rooms.size());
  std::vector<std::vector<std::vector<DoorBox>>> doors(manifest.rooms.size());
  for (std::size_t r = 0; r < manifest.rooms.size(); ++r) {
    ids.push_back(manifest.rooms[r].id);
    for (std::size_t c = 0; c < manifest.rooms[r].captures.size(); ++c) {
      wedges[r].push_back(result.captures[r][c].placed);
      xforms[r].push_back(result.captures[r][c].xform);
      doors[r].push_back(manifest.rooms[r].captures[c].doors);
    }
  }

  if (opts.intermediates_dir) {
    std::ofstream out(*opts.intermediates_dir / "wedges.txt");
    out << "# capture apex_x apex_y dir1_x dir1_y dir2_x dir2_y len1 len2\n";
    for (const auto& room : result.captures) {
      for (const CaptureResult& c : room) {
        const Wedge& w = c.placed;
        out << fmt::format("{} {:.6f} {:.6f} {:.6f} {:.6f} {:.6f} {:.6f} {:.6f} {:.6f}\n", c.capture_id, w.apex.x(),
                           w.apex.y(), w.dir1.x(), w.dir1.y(), w.dir2.x(), w.dir2.y(), w.len1, w.len2);
      }
    }
  }

  result.plan = assemble_floor(ids, wedges, xforms, doors, manifest.intrinsics, opts);
  return result;
}

EdgeMask rasterize_walls(const std::vector<std::vector<Vec2>>& rooms, const Vec2& lo, const Vec2& hi,
                         double resolution, double thickness_px) {
  EdgeMask mask;
  mask.width = static_cast<int>(std::ceil((hi.x() - lo.x()) / resolution));
  mask.height = static_cast<int>(std::ceil((hi.y() - lo.y()) / resolution));
  mask.labels.assign(static_cast<std::size_t>(mask.width) * mask.height, Label::other);
  const double reach = 0.5 * thickness_px * resolution;
  for (int v = 0; v < mask.height; ++v) {
    for (int u = 0; u < mask.width; ++u) {
      const Vec2 p(lo.x() + (u + 0.5) * resolution, hi.y() - (v + 0.5) * resolution);
      for (const std::vector<Vec2>& poly : rooms) {
        if (geom::nearest_edge(p, poly).distance <= reach) {
          mask.labels[static_cast<std::size_t>(v) * mask.width + u] = Label::edge;
          break;
        }
      }
    }
  }
  return mask;
}

MetricsReport evaluate(const FloorPlan& plan, const GroundTruth& truth, const EvalOptions& opts) {
  std::vector<double> area, area_gt, aspect, aspect_gt;
  std::vector<std::vector<Vec2>> est_polys, gt_polys;
  Vec2 lo = Vec2::Constant(std::numeric_limits<double>::infinity());
  Vec2 hi = -lo;
  Vec2 gt_lo = lo;
  Vec2 gt_hi = hi;
  for (const RoomPolygon& r : plan.rooms) {
    const GroundTruthRoom* g = truth.find(r.id());
    if (!g) throw InputError("eval", fmt::format("unmatched room id {}", r.id()));
    area.push_back(r.area());
    area_gt.push_back(g->area);
    aspect.push_back(aspect_ratio(r, plan.axis));
    aspect_gt.push_back(g->aspect);
    est_polys.push_back(r.vertices());
    gt_polys.push_back(g->corners);
    for (const Vec2& p : r.vertices()) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
    for (const Vec2& p : g->corners) {
      gt_lo = gt_lo.cwiseMin(p);
      gt_hi = gt_hi.cwiseMax(p);
    }
  }
  for (const GroundTruthRoom& g : truth.rooms) {
    const bool found = std::any_of(plan.rooms.begin(), plan.rooms.end(), [&](const auto& r) { return r.id() == g.id; });
    if (!found) throw InputError("eval", fmt::format("unmatched room id {}", g.id));
  }
  if (plan.rooms.empty()) throw InputError("eval", "plan has no rooms");

  MetricsReport report;
  report.area_mape_pct = mape(area, area_gt);
  report.aspect_mape_pct = mape(aspect, aspect_gt);

  const double diag = (gt_hi - gt_lo).norm();
  bool comparable = true;
  double corner_sum = 0.0;
  for (std::size_t i = 0; i < est_polys.size(); ++i) {
    if (est_polys[i].size() != gt_polys[i].size()) {
      comparable = false;
      break;
    }
    corner_sum += corner_error(est_polys[i], gt_polys[i], diag);
  }
  if (comparable) report.corner_error_pct = corner_sum / static_cast<double>(est_polys.size());

  const Vec2 margin = Vec2::Constant(0.5);
  const Vec2 r_lo = lo.cwiseMin(gt_lo) - margin;
  const Vec2 r_hi = hi.cwiseMax(gt_hi) + margin;
  const EdgeMask est = rasterize_walls(est_polys, r_lo, r_hi, opts.raster_resolution, opts.wall_thickness_px);
  const EdgeMask gt = rasterize_walls(gt_polys, r_lo, r_hi, opts.raster_resolution, opts.wall_thickness_px);
  report.pixel_error_pct = pixel_error(est, gt);
  Image a(est.width, est.height);
  Image b(gt.width, gt.height);
  for (std::size_t i = 0; i < est.labels.size(); ++i) {
    a.pixels[i] = est.labels[i] == Label::edge ? 255.0 : 0.0;
    b.pixels[i] = gt.labels[i] == Label::edge ? 255.0 : 0.0;
  }
  report.ssim = ssim(b, a);
  report.psnr_db = psnr(b, a);
  return report;
}

}  // namespace planforge
