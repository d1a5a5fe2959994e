#pragma once

#include <optional>

#include "planforge/types.hpp"

namespace planforge {

inline constexpr double kDefaultDoorWidth = 0.9;  // meters

// Fraction of the wall's image span between u_left and the box centroid.
double door_ratio(const DoorBox& box);

// Door width in meters, assuming the wall's image span maps affinely onto
// a wall of length wall_length.
double door_width_from_box(const DoorBox& box, double wall_length);

// Seen from inside a counter-clockwise room, the image-left end of wall i is
// vertex i + 1, so an image ratio anchored at u_left becomes 1 - ratio from
// the wall's first vertex.
inline double wall_ratio_from_image(double image_ratio) { return 1.0 - image_ratio; }

// Door centered ratio * L from the wall's first vertex, normal pointing into
// the room. The center is pulled back when the door would overhang a corner.
DoorPlacement place_door(double ratio, const RoomPolygon& room, int wall_index, double width = kDefaultDoorWidth);

// Wall of the room nearest to a corner position, resolved through the
// captured corner: 0 = wall leaving the corner counter-clockwise, 1 = arriving.
int wall_at_corner(const RoomPolygon& room, const Vec2& corner, int corner_wall);

// First wall hit by the ray through image column u from the capture position.
std::optional<int> wall_hit_by_column(const RoomPolygon& room, const PlanTransform& capture, const CameraIntrinsics& intr,
                                      double u);

}  // namespace planforge
