#include <doctest.h>

#include <cmath>
#include <fstream>

#include "planforge/error.hpp"
#include "planforge/ingest.hpp"
#include "planforge/raster.hpp"
#include "planforge/synth.hpp"
#include "support.hpp"

using namespace planforge;
using planforge::test::Gen;
using planforge::test::kPi;

namespace {

const char* kMinimal = R"({
  "version": 1,
  "intrinsics": {"f": 400, "cx": 2, "cy": 2, "width": 4, "height": 4},
  "scale_s": 1000,
  "rooms": [{"id": "a", "captures": [{
    "depth": "d.png", "edges": "e.png",
    "pose": {"qw": 1, "qx": 0, "qy": 0, "qz": 0, "tx": 0, "ty": -1.3, "tz": 0}
  }]}]
})";

std::string with_quaternion(double qw) {
  std::string s = kMinimal;
  s.replace(s.find("\"qw\": 1"), 7, "\"qw\": " + std::to_string(qw));
  return s;
}

// Yaw, pitch, roll in the session frame (y down): yaw about -y, pitch about x, roll about z.
Eigen::Quaterniond attitude(double yaw, double pitch, double roll) {
  return Eigen::AngleAxisd(yaw, -Vec3::UnitY()) * Eigen::AngleAxisd(pitch, Vec3::UnitX()) *
         Eigen::AngleAxisd(roll, Vec3::UnitZ());
}

}  // namespace

TEST_CASE("minimal manifest parses") {
  const auto m = parse_manifest_text(kMinimal, ".", false);
  REQUIRE(m.rooms.size() == 1);
  CHECK(m.rooms[0].id == "a");
  CHECK(m.rooms[0].captures.size() == 1);
  CHECK(m.intrinsics.f == 400);
  CHECK(m.scale.s == 1000);
  CHECK(m.resolve("d.png") == std::filesystem::path(".") / "d.png");
}

TEST_CASE("non-unit quaternion is rejected") {
  CHECK_THROWS_WITH_AS(parse_manifest_text(with_quaternion(0.8), ".", false), doctest::Contains("non-unit quaternion"),
                       InputError);
}

TEST_CASE("malformed and incomplete manifests") {
  CHECK_THROWS_WITH_AS(parse_manifest_text("{ not json", ".", false), doctest::Contains("malformed"), InputError);
  std::string missing = kMinimal;
  missing.erase(missing.find("\"scale_s\": 1000,"), 16);
  CHECK_THROWS_WITH(parse_manifest_text(missing, ".", false), doctest::Contains("scale_s"));
  CHECK_THROWS_WITH(parse_manifest_text(kMinimal, "/nonexistent_dir", true), doctest::Contains("d.png"));
  CHECK_THROWS_WITH(parse_manifest("/nonexistent_dir/manifest.json"), doctest::Contains("manifest.json"));
}

TEST_CASE("synth manifest round-trips through emit and parse") {
  const SynthDataset data = generate(test::two_room_spec());
  const std::string text = emit_manifest(data.manifest);
  const auto back = parse_manifest_text(text, data.manifest.base_dir, false);
  CHECK(back == data.manifest);
  CHECK(emit_manifest(back) == text);
  REQUIRE(back.rooms.size() == 2);
  for (const RoomEntry& r : back.rooms) CHECK(r.captures.size() == 4);
}

TEST_CASE("depth raster decode is lossless") {
  const auto dir = test::temp_dir("ingest_depth");
  const CameraIntrinsics intr{400, 2, 2, 4, 4};
  DepthMap d{4, 4, std::vector<std::uint16_t>(16, 1000)};
  encode_depth(dir / "d.png", d);
  const DepthMap back = decode_depth(dir / "d.png", {1000}, intr);
  CHECK(back.values == d.values);

  Gen g(9);
  for (auto& v : d.values) v = static_cast<std::uint16_t>(g.integer(0, 65535));
  encode_depth(dir / "r.png", d);
  CHECK(decode_depth(dir / "r.png", {1000}, intr).values == d.values);

  CHECK_THROWS_WITH(decode_depth(dir / "d.png", {1000}, {400, 2, 2, 5, 4}), doctest::Contains("dimension mismatch"));
}

TEST_CASE("8-bit depth raster is rejected") {
  const auto dir = test::temp_dir("ingest_8bit");
  write_gray_png(dir / "d8.png", GrayRaster{4, 4, 8, std::vector<std::uint16_t>(16, 100)});
  CHECK_THROWS_WITH_AS(decode_depth(dir / "d8.png", {1000}, {400, 2, 2, 4, 4}),
                       doctest::Contains("unsupported bit depth"), InputError);
}

TEST_CASE("edge mask decoding") {
  const auto dir = test::temp_dir("ingest_mask");
  write_gray_png(dir / "zero.png", GrayRaster{3, 2, 8, std::vector<std::uint16_t>(6, 0)});
  const EdgeMask z = decode_edge_mask(dir / "zero.png");
  CHECK(std::all_of(z.labels.begin(), z.labels.end(), [](Label l) { return l == Label::other; }));

  write_gray_png(dir / "mixed.png", GrayRaster{3, 1, 8, {0, 128, 255}});
  const EdgeMask m = decode_edge_mask(dir / "mixed.png");
  CHECK(m.labels == std::vector<Label>{Label::other, Label::wall, Label::edge});

  write_gray_png(dir / "bad.png", GrayRaster{3, 1, 8, {0, 17, 255}});
  CHECK_THROWS_WITH_AS(decode_edge_mask(dir / "bad.png"), doctest::Contains("unexpected mask value 17"), InputError);

  EdgeMask mask{3, 1, {Label::edge, Label::other, Label::wall}};
  encode_edge_mask(dir / "rt.png", mask);
  CHECK(decode_edge_mask(dir / "rt.png").labels == mask.labels);
}

TEST_CASE("missing and non-PNG rasters name the file") {
  const auto dir = test::temp_dir("ingest_missing");
  CHECK_THROWS_WITH(decode_edge_mask(dir / "nope.png"), doctest::Contains("nope.png"));
  std::ofstream(dir / "text.png") << "hello";
  CHECK_THROWS_WITH(decode_depth(dir / "text.png", {1000}, {400, 2, 2, 4, 4}), doctest::Contains("text.png"));
}

TEST_CASE("synth wall at 2 m decodes to raw 2000 at the centre pixel") {
  // Square room sized so the target corner is 2 m ahead of the camera:
  // half diagonal plus the 0.5 m back-off.
  const double side = (2.0 - kCameraBackoff) * std::sqrt(2.0);
  const SynthDataset data = generate(test::single_room_spec(side, side));
  const auto dir = test::temp_dir("ingest_wall");
  write_dataset(data, dir);
  const DatasetManifest m = parse_manifest(dir / "manifest.json");
  for (std::size_t k = 0; k < 4; ++k) {
    const CaptureEntry& c = m.rooms[0].captures[k];
    const DepthMap d = decode_depth(m.resolve(c.depth), m.scale, m.intrinsics);
    CHECK(d.values == data.captures[0][k].depth.values);
    CHECK(d.at(320, 240) == 2000);
  }
}

TEST_CASE("reduce_pose examples") {
  const PlanTransform id = reduce_pose(CapturePose{});
  CHECK(id.yaw == 0.0);
  CHECK(id.tx == 0.0);
  CHECK(id.ty == 0.0);

  CapturePose p;
  p.q = Eigen::AngleAxisd(kPi / 2, -Vec3::UnitY());
  p.t = Vec3(1, 0, 2);
  const PlanTransform r = reduce_pose(p);
  CHECK(r.yaw == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK(r.tx == 1.0);
  CHECK(r.ty == 2.0);
}

TEST_CASE("reduce_pose ignores roll and pitch below the limit") {
  Gen g(17);
  for (int i = 0; i < 200; ++i) {
    const double yaw = g.uniform(-3.1, 3.1);
    CapturePose p;
    p.q = attitude(yaw, g.uniform(-1.2, 1.2), g.uniform(-kPi, kPi));
    p.t = Vec3(g.uniform(-5, 5), g.uniform(-2, 0), g.uniform(-5, 5));
    const PlanTransform r = reduce_pose(p);
    CHECK(std::abs(geom::wrap_angle(r.yaw - yaw)) < 1e-9);
    CHECK(r.tx == p.t.x());
    CHECK(r.ty == p.t.z());
  }
}

TEST_CASE("steep pitch is unusable") {
  CapturePose p;
  p.q = attitude(0.3, 81.0 * kPi / 180.0, 0.0);
  CHECK_THROWS_WITH_AS(reduce_pose(p), "pose unusable for plan reduction", GeometryError);
  p.q = attitude(0.3, 79.0 * kPi / 180.0, 0.0);
  CHECK_NOTHROW(reduce_pose(p));
}

TEST_CASE("reduce_pose commutes with yaw-only rotation") {
  Gen g(23);
  for (int i = 0; i < 100; ++i) {
    CapturePose p;
    p.q = attitude(g.uniform(-kPi, kPi), g.uniform(-1.0, 1.0), g.uniform(-0.5, 0.5));
    p.t = Vec3(g.uniform(-5, 5), g.uniform(-2, 0), g.uniform(-5, 5));
    const double r = g.uniform(-kPi, kPi);
    const PlanTransform lhs = reduce_pose(rotate_about_up(p, r));
    const PlanTransform rhs = reduce_pose(p).then(PlanTransform::rotation(r));
    CHECK(std::abs(geom::wrap_angle(lhs.yaw - rhs.yaw)) < 1e-9);
    CHECK(lhs.tx == doctest::Approx(rhs.tx).epsilon(1e-12));
    CHECK(lhs.ty == doctest::Approx(rhs.ty).epsilon(1e-12));
  }
}
