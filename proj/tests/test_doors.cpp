#include <doctest.h>

#include <cmath>

#include "planforge/doors.hpp"
#include "planforge/error.hpp"
#include "planforge/synth.hpp"
#include "support.hpp"

using namespace planforge;
using planforge::test::Gen;

namespace {

DoorBox box_at(double centre, double half_width = 50.0) {
  return DoorBox{"c#0", centre - half_width, 100, centre + half_width, 400, 100, 700, std::nullopt};
}

RoomPolygon rect(double w, double h) { return RoomPolygon("r", {{0, 0}, {w, 0}, {w, h}, {0, h}}); }

}  // namespace

TEST_CASE("door_ratio examples") {
  CHECK(door_ratio(box_at(400)) == 0.5);
  CHECK(door_ratio(box_at(250)) == 0.25);
  CHECK_THROWS_WITH_AS(door_ratio(box_at(800)), doctest::Contains("door outside wall"), GeometryError);
  CHECK_THROWS_WITH(door_ratio(box_at(100)), doctest::Contains("door outside wall"));
}

TEST_CASE("door_ratio is invariant to image rescaling") {
  Gen g(113);
  for (int i = 0; i < 500; ++i) {
    const double left = g.uniform(0, 300), right = left + g.uniform(50, 600);
    const double c = g.uniform(left + 1, right - 1), half = g.uniform(1, 40);
    const DoorBox b{"x", c - half, 0, c + half, 10, left, right, std::nullopt};
    const double k = g.uniform(0.2, 5);
    const DoorBox s{"x", b.u_min * k, 0, b.u_max * k, 10 * k, left * k, right * k, std::nullopt};
    CHECK(door_ratio(s) == doctest::Approx(door_ratio(b)).epsilon(1e-12));
  }
}

TEST_CASE("place_door examples") {
  const RoomPolygon r = rect(4, 3);
  const DoorPlacement d = place_door(0.5, r, 0, 0.9);
  CHECK((d.center - Vec2(2, 0)).norm() < 1e-12);
  CHECK_FALSE(d.clamped);
  CHECK(d.ratio == 0.5);
  CHECK(d.normal == Vec2(0, 1));  // into the room

  const DoorPlacement big = place_door(0.5, RoomPolygon("r", {{0, 0}, {8, 0}, {8, 6}, {0, 6}}), 0, 0.9);
  CHECK((big.center - Vec2(4, 0)).norm() < 1e-12);
  CHECK(big.ratio == d.ratio);

  const DoorPlacement edge = place_door(0.99, r, 0, 0.9);
  CHECK(edge.clamped);
  CHECK(edge.center.x() == doctest::Approx(4 - 0.45));
  CHECK(edge.ratio == doctest::Approx((4 - 0.45) / 4));

  const DoorPlacement side = place_door(0.25, r, 1, 0.9);
  CHECK((side.center - Vec2(4, 0.75)).norm() < 1e-12);
  CHECK((side.normal - Vec2(-1, 0)).norm() < 1e-12);

  CHECK_THROWS_AS(place_door(0.5, r, 4, 0.9), InputError);
  CHECK_THROWS_AS(place_door(0.5, r, 1, 3.5), GeometryError);
  CHECK_THROWS_AS(place_door(1.0, r, 1, 0.9), GeometryError);
}

TEST_CASE("place_door offset is linear in wall length") {
  Gen g(127);
  for (int i = 0; i < 500; ++i) {
    const double L = g.uniform(2, 8), ratio = g.uniform(0.2, 0.8), k = g.uniform(0.5, 3);
    const DoorPlacement a = place_door(ratio, rect(L, 2), 0, 0.3);
    const DoorPlacement b = place_door(ratio, rect(k * L, 2), 0, 0.3);
    CHECK(b.center.x() == doctest::Approx(k * a.center.x()).epsilon(1e-12));
    CHECK(a.ratio == doctest::Approx(b.ratio).epsilon(1e-12));
  }
}

TEST_CASE("door width from box") {
  CHECK(door_width_from_box(box_at(400, 75), 4.0) == doctest::Approx(1.0));
  CHECK(door_width_from_box(box_at(400, 75), 8.0) == doctest::Approx(2.0));
}

TEST_CASE("wall association helpers") {
  const RoomPolygon r = rect(4, 3);
  CHECK(wall_at_corner(r, {4.01, 2.98}, 0) == 2);
  CHECK(wall_at_corner(r, {4.01, 2.98}, 1) == 1);
  CHECK(wall_at_corner(r, {0, 0}, 1) == 3);
  CHECK_THROWS_AS(wall_at_corner(r, {0, 0}, 2), InputError);

  const CameraIntrinsics intr = default_intrinsics();
  // Camera in the middle looking along +y: the centre column hits the far wall.
  const PlanTransform x{0.0, 2.0, 1.5};
  CHECK(wall_hit_by_column(r, x, intr, intr.cx) == 2);
  CHECK(wall_hit_by_column(r, {0.0, 0.5, 0.5}, intr, 0.0) == 3);
  CHECK(wall_hit_by_column(r, {0.0, 3.5, 0.5}, intr, 639.0) == 1);
  CHECK_FALSE(wall_hit_by_column(r, {0.0, 2.0, 5.0}, intr, intr.cx).has_value());
}

TEST_CASE("door ratio composed with placement reproduces synth ground truth") {
  for (int wall = 0; wall < 4; ++wall) {
    for (double offset : {0.2, 0.35, 0.5, 0.71}) {
      FloorSpec spec = test::single_room_spec(4.0, 3.0);
      spec.doors = {{"room", wall, offset, 0.8}};
      const SynthDataset data = generate(spec);
      const GroundTruthRoom& gt = data.truth.rooms[0];
      const GroundTruthDoor& door = data.truth.doors[0];
      const RoomPolygon room(gt.id, gt.corners);
      const DoorBox& box = data.captures[0][wall].doors.at(0);
      REQUIRE(box.corner_wall == 0);
      CHECK(wall_at_corner(room, gt.corners[wall], 0) == wall);
      const double L = room.wall_length(wall);
      const DoorPlacement d =
          place_door(wall_ratio_from_image(door_ratio(box)), room, wall, door_width_from_box(box, L));
      CHECK(std::abs(d.ratio * L - door.offset * L) < 1e-9);
      CHECK((d.center - door.center).norm() < 1e-9);
      CHECK(std::abs(d.width - door.width) < 1e-9);
      CHECK_FALSE(d.clamped);
    }
  }
}
