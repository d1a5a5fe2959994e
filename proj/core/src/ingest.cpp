#include "planforge/ingest.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "planforge/error.hpp"
#include "planforge/geometry.hpp"
#include "planforge/raster.hpp"

namespace planforge {
namespace {

using nlohmann::json;

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw InputError("ingest", fmt::format("malformed manifest: {} is not an object", where));
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError("ingest", fmt::format("missing field {}.{}", where, key));
  return *it;
}

double number(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_number()) throw InputError("ingest", fmt::format("field {}.{} must be a number", where, key));
  return v.get<double>();
}

int integer(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_number_integer()) throw InputError("ingest", fmt::format("field {}.{} must be an integer", where, key));
  return v.get<int>();
}

std::string text(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_string()) throw InputError("ingest", fmt::format("field {}.{} must be a string", where, key));
  return v.get<std::string>();
}

const json& array(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_array()) throw InputError("ingest", fmt::format("field {}.{} must be an array", where, key));
  return v;
}

DoorBox parse_door(const json& j, const std::string& capture_id, const std::string& where) {
  DoorBox box;
  box.capture_id = capture_id;
  box.u_min = number(j, "u_min", where);
  box.v_min = number(j, "v_min", where);
  box.u_max = number(j, "u_max", where);
  box.v_max = number(j, "v_max", where);
  box.u_left = number(j, "u_left", where);
  box.u_right = number(j, "u_right", where);
  if (j.contains("wall")) {
    const int w = integer(j, "wall", where);
    if (w != 0 && w != 1) throw InputError("ingest", fmt::format("{}.wall must be 0 or 1", where));
    box.corner_wall = w;
  }
  return box;
}

}  // namespace

std::string DatasetManifest::capture_id(const std::string& room, std::size_t index) {
  return fmt::format("{}#{}", room, index);
}

void DatasetManifest::validate(bool check_files) const {
  intrinsics.validate();
  scale.validate();
  if (rooms.empty()) throw InputError("ingest", "manifest has no rooms");
  for (const RoomEntry& room : rooms) {
    if (room.captures.empty()) throw InputError("ingest", fmt::format("room {} has no captures", room.id));
    for (std::size_t i = 0; i < room.captures.size(); ++i) {
      const CaptureEntry& c = room.captures[i];
      try {
        c.pose.validate();
        for (const DoorBox& d : c.doors) d.validate();
      } catch (const InputError& e) {
        throw InputError("ingest", fmt::format("{}: {}", capture_id(room.id, i), e.what()));
      }
      if (check_files) {
        for (const std::string* p : {&c.depth, &c.edges}) {
          if (!std::filesystem::is_regular_file(resolve(*p))) {
            throw InputError("ingest", fmt::format("{}: referenced file {} does not exist", capture_id(room.id, i),
                                                   resolve(*p).string()));
          }
        }
      }
    }
  }
}

bool DatasetManifest::operator==(const DatasetManifest& o) const {
  return version == o.version && intrinsics.f == o.intrinsics.f && intrinsics.cx == o.intrinsics.cx &&
         intrinsics.cy == o.intrinsics.cy && intrinsics.width == o.intrinsics.width &&
         intrinsics.height == o.intrinsics.height && scale.s == o.scale.s && rooms == o.rooms;
}

DatasetManifest parse_manifest_text(const std::string& content, const std::filesystem::path& base_dir,
                                    bool check_files) {
  json doc;
  try {
    doc = json::parse(content);
  } catch (const json::parse_error& e) {
    throw InputError("ingest", fmt::format("malformed manifest: {}", e.what()));
  }

  DatasetManifest m;
  m.base_dir = base_dir;
  m.version = integer(doc, "version", "manifest");
  const json& intr = field(doc, "intrinsics", "manifest");
  m.intrinsics.f = number(intr, "f", "intrinsics");
  m.intrinsics.cx = number(intr, "cx", "intrinsics");
  m.intrinsics.cy = number(intr, "cy", "intrinsics");
  m.intrinsics.width = integer(intr, "width", "intrinsics");
  m.intrinsics.height = integer(intr, "height", "intrinsics");
  m.scale.s = number(doc, "scale_s", "manifest");

  for (const json& jr : array(doc, "rooms", "manifest")) {
    RoomEntry room;
    room.id = text(jr, "id", "rooms[]");
    const std::string rwhere = fmt::format("rooms[{}]", room.id);
    const json& captures = array(jr, "captures", rwhere);
    for (std::size_t i = 0; i < captures.size(); ++i) {
      const json& jc = captures[i];
      const std::string cid = DatasetManifest::capture_id(room.id, i);
      CaptureEntry c;
      c.depth = text(jc, "depth", cid);
      c.edges = text(jc, "edges", cid);
      const json& jp = field(jc, "pose", cid);
      const std::string pwhere = cid + ".pose";
      c.pose.q = Eigen::Quaterniond(number(jp, "qw", pwhere), number(jp, "qx", pwhere), number(jp, "qy", pwhere),
                                    number(jp, "qz", pwhere));
      c.pose.t = Vec3(number(jp, "tx", pwhere), number(jp, "ty", pwhere), number(jp, "tz", pwhere));
      if (jc.contains("doors")) {
        const json& doors = array(jc, "doors", cid);
        for (std::size_t d = 0; d < doors.size(); ++d) {
          c.doors.push_back(parse_door(doors[d], cid, fmt::format("{}.doors[{}]", cid, d)));
        }
      }
      room.captures.push_back(std::move(c));
    }
    m.rooms.push_back(std::move(room));
  }
  m.validate(check_files);
  return m;
}

DatasetManifest parse_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("ingest", fmt::format("cannot read manifest {}", path.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifest_text(ss.str(), path.parent_path());
}

std::string emit_manifest(const DatasetManifest& m) {
  json doc;
  doc["version"] = m.version;
  doc["intrinsics"] = {{"f", m.intrinsics.f},
                       {"cx", m.intrinsics.cx},
                       {"cy", m.intrinsics.cy},
                       {"width", m.intrinsics.width},
                       {"height", m.intrinsics.height}};
  doc["scale_s"] = m.scale.s;
  json rooms = json::array();
  for (const RoomEntry& room : m.rooms) {
    json captures = json::array();
    for (const CaptureEntry& c : room.captures) {
      json doors = json::array();
      for (const DoorBox& d : c.doors) {
        json jd = {{"u_min", d.u_min}, {"v_min", d.v_min},   {"u_max", d.u_max},
                   {"v_max", d.v_max}, {"u_left", d.u_left}, {"u_right", d.u_right}};
        if (d.corner_wall) jd["wall"] = *d.corner_wall;
        doors.push_back(std::move(jd));
      }
      captures.push_back({{"depth", c.depth},
                          {"edges", c.edges},
                          {"pose",
                           {{"qw", c.pose.q.w()},
                            {"qx", c.pose.q.x()},
                            {"qy", c.pose.q.y()},
                            {"qz", c.pose.q.z()},
                            {"tx", c.pose.t.x()},
                            {"ty", c.pose.t.y()},
                            {"tz", c.pose.t.z()}}},
                          {"doors", std::move(doors)}});
    }
    rooms.push_back({{"id", room.id}, {"captures", std::move(captures)}});
  }
  doc["rooms"] = std::move(rooms);
  return doc.dump(2) + "\n";
}

void write_manifest(const std::filesystem::path& path, const DatasetManifest& manifest) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("ingest", fmt::format("cannot write manifest {}", path.string()));
  out << emit_manifest(manifest);
}

DepthMap decode_depth(const std::filesystem::path& path, const SceneScale& scale, const CameraIntrinsics& intr) {
  scale.validate();
  GrayRaster r = read_gray_png(path);
  if (r.bit_depth != 16) {
    throw InputError("ingest", fmt::format("{}: unsupported bit depth {} for depth raster", path.string(), r.bit_depth));
  }
  DepthMap depth{r.width, r.height, std::move(r.samples)};
  try {
    depth.validate(intr);
  } catch (const InputError& e) {
    throw InputError("ingest", fmt::format("{}: {}", path.string(), e.what()));
  }
  return depth;
}

EdgeMask decode_edge_mask(const std::filesystem::path& path) {
  GrayRaster r = read_gray_png(path);
  if (r.bit_depth != 8) {
    throw InputError("ingest", fmt::format("{}: unsupported bit depth {} for edge mask", path.string(), r.bit_depth));
  }
  EdgeMask mask{r.width, r.height, std::vector<Label>(r.samples.size())};
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    switch (r.samples[i]) {
      case 0: mask.labels[i] = Label::other; break;
      case 128: mask.labels[i] = Label::wall; break;
      case 255: mask.labels[i] = Label::edge; break;
      default:
        throw InputError("ingest", fmt::format("{}: unexpected mask value {} at pixel ({}, {})", path.string(),
                                               r.samples[i], i % r.width, i / r.width));
    }
  }
  return mask;
}

void encode_depth(const std::filesystem::path& path, const DepthMap& depth) {
  depth.validate();
  write_gray_png(path, GrayRaster{depth.width, depth.height, 16, depth.values});
}

void encode_edge_mask(const std::filesystem::path& path, const EdgeMask& mask) {
  mask.validate();
  GrayRaster r{mask.width, mask.height, 8, std::vector<std::uint16_t>(mask.labels.size())};
  for (std::size_t i = 0; i < mask.labels.size(); ++i) {
    r.samples[i] = mask.labels[i] == Label::edge ? 255 : mask.labels[i] == Label::wall ? 128 : 0;
  }
  write_gray_png(path, r);
}

PlanTransform reduce_pose(const CapturePose& pose) {
  pose.validate();
  const Vec3 forward = pose.q * Vec3::UnitZ();
  if (std::abs(forward.y()) > std::sin(kMaxPitchDeg * std::numbers::pi / 180.0)) {
    throw GeometryError("ingest", "pose unusable for plan reduction");
  }
  // Plan (x, y) is session (x, z); forward at yaw 0 is plan +y.
  const double yaw = geom::wrap_angle(std::atan2(-forward.x(), forward.z()));
  return {yaw, pose.t.x(), pose.t.z()};
}

CapturePose rotate_about_up(const CapturePose& pose, double yaw) {
  const Eigen::Quaterniond r(Eigen::AngleAxisd(yaw, -Vec3::UnitY()));
  CapturePose out;
  out.q = (r * pose.q).normalized();
  out.t = r * pose.t;
  return out;
}

}  // namespace planforge
