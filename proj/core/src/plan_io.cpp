#include "planforge/plan_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "planforge/error.hpp"

namespace planforge {
namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

constexpr const char* kStage = "plan_io";

double round6(double v) {
  const double r = std::round(v * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;
}

ordered point(const Vec2& p) { return ordered::array({round6(p.x()), round6(p.y())}); }

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw InputError(kStage, fmt::format("malformed document: {} is not an object", where));
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(kStage, fmt::format("missing field {}.{}", where, key));
  return *it;
}

double number(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_number()) throw InputError(kStage, fmt::format("field {}.{} must be a number", where, key));
  return v.get<double>();
}

double number_or(const json& obj, const char* key, double fallback, const std::string& where) {
  return obj.contains(key) ? number(obj, key, where) : fallback;
}

int integer(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_number_integer()) throw InputError(kStage, fmt::format("field {}.{} must be an integer", where, key));
  return v.get<int>();
}

std::string text(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_string()) throw InputError(kStage, fmt::format("field {}.{} must be a string", where, key));
  return v.get<std::string>();
}

const json& array(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_array()) throw InputError(kStage, fmt::format("field {}.{} must be an array", where, key));
  return v;
}

Vec2 parse_point(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InputError(kStage, fmt::format("{} must be an [x, y] pair", where));
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Vec2> parse_points(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(kStage, fmt::format("{} must be an array of points", where));
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_point(j[i], fmt::format("{}[{}]", where, i)));
  return out;
}

ordered points(const std::vector<Vec2>& pts) {
  ordered a = ordered::array();
  for (const Vec2& p : pts) a.push_back(point(p));
  return a;
}

json parse_doc(const std::string& content, const char* what) {
  try {
    return json::parse(content);
  } catch (const json::parse_error& e) {
    throw InputError(kStage, fmt::format("malformed {}: {}", what, e.what()));
  }
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path, const char* stage) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(stage, fmt::format("cannot read {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content, const char* stage) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(stage, fmt::format("cannot write {}", path.string()));
  out << content;
  if (!out) throw InputError(stage, fmt::format("cannot write {}", path.string()));
}

std::string emit_plan(const FloorPlan& plan) {
  ordered doc;
  doc["units"] = plan.units;
  doc["axis"] = round6(plan.axis);
  ordered rooms = ordered::array();
  for (const RoomPolygon& r : plan.rooms) {
    ordered room;
    room["id"] = r.id();
    room["vertices"] = points(r.vertices());
    room["area"] = round6(r.area());
    rooms.push_back(room);
  }
  doc["rooms"] = rooms;
  doc["boundary"] = points(plan.boundary.vertices());
  ordered doors = ordered::array();
  for (const DoorPlacement& d : plan.doors) {
    ordered door;
    door["room"] = d.room_id;
    door["wall"] = d.wall_index;
    door["ratio"] = round6(d.ratio);
    door["width"] = round6(d.width);
    door["clamped"] = d.clamped;
    door["center"] = point(d.center);
    door["normal"] = point(d.normal);
    doors.push_back(door);
  }
  doc["doors"] = doors;
  return doc.dump(2) + "\n";
}

FloorPlan parse_plan_text(const std::string& content) {
  const json doc = parse_doc(content, "plan");
  FloorPlan plan;
  plan.units = text(doc, "units", "plan");
  if (plan.units != "m") throw InputError(kStage, fmt::format("unsupported units {}", plan.units));
  plan.axis = number(doc, "axis", "plan");
  const json& rooms = array(doc, "rooms", "plan");
  for (std::size_t i = 0; i < rooms.size(); ++i) {
    const std::string where = fmt::format("rooms[{}]", i);
    plan.rooms.emplace_back(text(rooms[i], "id", where), parse_points(field(rooms[i], "vertices", where), where));
  }
  plan.boundary = BoundaryPolygon(parse_points(field(doc, "boundary", "plan"), "boundary"));
  const json& doors = array(doc, "doors", "plan");
  for (std::size_t i = 0; i < doors.size(); ++i) {
    const std::string where = fmt::format("doors[{}]", i);
    DoorPlacement d;
    d.room_id = text(doors[i], "room", where);
    d.wall_index = integer(doors[i], "wall", where);
    d.ratio = number(doors[i], "ratio", where);
    d.width = number(doors[i], "width", where);
    d.clamped = field(doors[i], "clamped", where).get<bool>();
    d.center = parse_point(field(doors[i], "center", where), where + ".center");
    d.normal = parse_point(field(doors[i], "normal", where), where + ".normal");
    plan.doors.push_back(d);
  }
  return plan;
}

void write_plan(const std::filesystem::path& path, const FloorPlan& plan) {
  write_text_file(path, emit_plan(plan), kStage);
}

FloorPlan read_plan(const std::filesystem::path& path) { return parse_plan_text(read_text_file(path, kStage)); }

std::string emit_ground_truth(const GroundTruth& gt) {
  ordered doc;
  ordered rooms = ordered::array();
  for (const GroundTruthRoom& r : gt.rooms) {
    ordered room;
    room["id"] = r.id;
    room["vertices"] = points(r.corners);
    room["area"] = round6(r.area);
    room["aspect"] = round6(r.aspect);
    rooms.push_back(room);
  }
  doc["rooms"] = rooms;
  ordered doors = ordered::array();
  for (const GroundTruthDoor& d : gt.doors) {
    ordered door;
    door["room"] = d.room_id;
    door["wall"] = d.wall;
    door["offset"] = round6(d.offset);
    door["width"] = round6(d.width);
    door["center"] = point(d.center);
    doors.push_back(door);
  }
  doc["doors"] = doors;
  return doc.dump(2) + "\n";
}

GroundTruth parse_ground_truth_text(const std::string& content) {
  const json doc = parse_doc(content, "ground truth");
  GroundTruth gt;
  const json& rooms = array(doc, "rooms", "ground truth");
  for (std::size_t i = 0; i < rooms.size(); ++i) {
    const std::string where = fmt::format("rooms[{}]", i);
    GroundTruthRoom r;
    r.id = text(rooms[i], "id", where);
    r.corners = parse_points(field(rooms[i], "vertices", where), where);
    r.area = number(rooms[i], "area", where);
    r.aspect = number(rooms[i], "aspect", where);
    gt.rooms.push_back(std::move(r));
  }
  if (doc.contains("doors")) {
    const json& doors = array(doc, "doors", "ground truth");
    for (std::size_t i = 0; i < doors.size(); ++i) {
      const std::string where = fmt::format("doors[{}]", i);
      GroundTruthDoor d;
      d.room_id = text(doors[i], "room", where);
      d.wall = integer(doors[i], "wall", where);
      d.offset = number(doors[i], "offset", where);
      d.width = number(doors[i], "width", where);
      d.center = parse_point(field(doors[i], "center", where), where + ".center");
      gt.doors.push_back(std::move(d));
    }
  }
  return gt;
}

void write_ground_truth(const std::filesystem::path& path, const GroundTruth& gt) {
  write_text_file(path, emit_ground_truth(gt), kStage);
}

GroundTruth read_ground_truth(const std::filesystem::path& path) {
  return parse_ground_truth_text(read_text_file(path, kStage));
}

std::string emit_metrics(const MetricsReport& report) {
  ordered doc;
  auto put = [&](const char* key, const std::optional<double>& v) {
    if (!v) {
      doc[key] = nullptr;
    } else if (std::isinf(*v)) {
      doc[key] = *v > 0 ? "inf" : "-inf";
    } else {
      doc[key] = round6(*v);
    }
  };
  put("ssim", report.ssim);
  put("psnr_db", report.psnr_db);
  put("pixel_error_pct", report.pixel_error_pct);
  put("corner_error_pct", report.corner_error_pct);
  put("area_mape_pct", report.area_mape_pct);
  put("aspect_mape_pct", report.aspect_mape_pct);
  return doc.dump(2) + "\n";
}

FloorSpecFile parse_floor_spec_text(const std::string& content) {
  const json doc = parse_doc(content, "floor spec");
  FloorSpecFile out;
  FloorSpec& s = out.spec;
  const json& rooms = array(doc, "rooms", "spec");
  for (std::size_t i = 0; i < rooms.size(); ++i) {
    const std::string where = fmt::format("rooms[{}]", i);
    SynthRoom r;
    r.id = text(rooms[i], "id", where);
    r.min = parse_point(field(rooms[i], "min", where), where + ".min");
    r.max = parse_point(field(rooms[i], "max", where), where + ".max");
    s.rooms.push_back(std::move(r));
  }
  if (doc.contains("doors")) {
    const json& doors = array(doc, "doors", "spec");
    for (std::size_t i = 0; i < doors.size(); ++i) {
      const std::string where = fmt::format("doors[{}]", i);
      SynthDoor d;
      d.room_id = text(doors[i], "room", where);
      d.wall = integer(doors[i], "wall", where);
      d.offset = number(doors[i], "offset", where);
      d.width = number_or(doors[i], "width", 0.9, where);
      s.doors.push_back(std::move(d));
    }
  }
  if (doc.contains("occluders")) {
    const json& occ = array(doc, "occluders", "spec");
    for (std::size_t i = 0; i < occ.size(); ++i) {
      const std::string where = fmt::format("occluders[{}]", i);
      Occluder b;
      b.min = parse_point(field(occ[i], "min", where), where + ".min");
      b.max = parse_point(field(occ[i], "max", where), where + ".max");
      b.height = number(occ[i], "height", where);
      s.occluders.push_back(b);
    }
  }
  s.camera_height = number_or(doc, "camera_height", s.camera_height, "spec");
  s.ceiling_height = number_or(doc, "ceiling_height", s.ceiling_height, "spec");
  if (doc.contains("noise")) {
    const json& n = field(doc, "noise", "spec");
    s.noise.depth_sigma = number_or(n, "depth_sigma", 0.0, "noise");
    s.noise.depth_pixel_sigma = number_or(n, "depth_pixel_sigma", 0.0, "noise");
    s.noise.yaw_sigma = number_or(n, "yaw_sigma", 0.0, "noise");
    s.noise.translation_sigma = number_or(n, "translation_sigma", 0.0, "noise");
  }
  if (doc.contains("seed")) {
    const json& seed = field(doc, "seed", "spec");
    if (!seed.is_number_unsigned()) throw InputError(kStage, "field spec.seed must be a non-negative integer");
    s.seed = seed.get<std::uint64_t>();
  }
  if (doc.contains("intrinsics")) {
    const json& intr = field(doc, "intrinsics", "spec");
    out.intrinsics.f = number(intr, "f", "intrinsics");
    out.intrinsics.cx = number(intr, "cx", "intrinsics");
    out.intrinsics.cy = number(intr, "cy", "intrinsics");
    out.intrinsics.width = integer(intr, "width", "intrinsics");
    out.intrinsics.height = integer(intr, "height", "intrinsics");
  }
  out.scale.s = number_or(doc, "scale_s", out.scale.s, "spec");
  return out;
}

FloorSpecFile read_floor_spec(const std::filesystem::path& path) {
  return parse_floor_spec_text(read_text_file(path, kStage));
}

std::string emit_floor_spec(const FloorSpecFile& file) {
  const FloorSpec& s = file.spec;
  ordered doc;
  ordered rooms = ordered::array();
  for (const SynthRoom& r : s.rooms) {
    ordered room;
    room["id"] = r.id;
    room["min"] = point(r.min);
    room["max"] = point(r.max);
    rooms.push_back(room);
  }
  doc["rooms"] = rooms;
  ordered doors = ordered::array();
  for (const SynthDoor& d : s.doors) {
    doors.push_back(ordered{{"room", d.room_id}, {"wall", d.wall}, {"offset", d.offset}, {"width", d.width}});
  }
  doc["doors"] = doors;
  ordered occ = ordered::array();
  for (const Occluder& b : s.occluders) {
    occ.push_back(ordered{{"min", point(b.min)}, {"max", point(b.max)}, {"height", b.height}});
  }
  doc["occluders"] = occ;
  doc["camera_height"] = s.camera_height;
  doc["ceiling_height"] = s.ceiling_height;
  doc["noise"] = ordered{{"depth_sigma", s.noise.depth_sigma},
                         {"depth_pixel_sigma", s.noise.depth_pixel_sigma},
                         {"yaw_sigma", s.noise.yaw_sigma},
                         {"translation_sigma", s.noise.translation_sigma}};
  doc["seed"] = s.seed;
  doc["intrinsics"] = ordered{{"f", file.intrinsics.f},
                              {"cx", file.intrinsics.cx},
                              {"cy", file.intrinsics.cy},
                              {"width", file.intrinsics.width},
                              {"height", file.intrinsics.height}};
  doc["scale_s"] = file.scale.s;
  return doc.dump(2) + "\n";
}

}  // namespace planforge
