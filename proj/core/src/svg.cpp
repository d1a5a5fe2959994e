#include "planforge/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "planforge/error.hpp"
#include "planforge/geometry.hpp"
#include "planforge/plan_io.hpp"

namespace planforge {
namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const FloorPlan& plan, const SvgOptions& opts) {
  const double turn = opts.upright ? -plan.axis : 0.0;
  auto page = [&](const Vec2& p) { return geom::rotate(p, turn); };

  Vec2 lo = Vec2::Constant(std::numeric_limits<double>::infinity());
  Vec2 hi = -lo;
  auto grow = [&](const Vec2& p) {
    lo = lo.cwiseMin(page(p));
    hi = hi.cwiseMax(page(p));
  };
  for (const Vec2& p : plan.boundary.vertices()) grow(p);
  for (const RoomPolygon& r : plan.rooms) {
    for (const Vec2& p : r.vertices()) grow(p);
  }
  if (!lo.allFinite()) lo = hi = Vec2::Zero();
  lo -= Vec2::Constant(opts.margin_m);
  hi += Vec2::Constant(opts.margin_m);
  lo = lo.array().floor();
  hi = hi.array().ceil();

  const double k = opts.pixels_per_meter;
  const double width = (hi.x() - lo.x()) * k;
  const double height = (hi.y() - lo.y()) * k;
  // Plan y grows up, SVG y grows down.
  auto to_px = [&](const Vec2& p) {
    const Vec2 q = page(p);
    return Vec2((q.x() - lo.x()) * k, (hi.y() - q.y()) * k);
  };
  auto xy = [&](const Vec2& p) {
    const Vec2 q = to_px(p);
    return fmt::format("{:.2f},{:.2f}", q.x(), q.y());
  };
  auto poly_points = [&](const std::vector<Vec2>& pts) {
    std::string s;
    for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? " " : "") + xy(pts[i]);
    return s;
  };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" viewBox=\"0 0 {:.0f} {:.0f}\">\n",
      width, height, width, height);
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  out += "<g id=\"grid\" stroke=\"#e0e0e0\" stroke-width=\"1\">\n";
  for (double x = lo.x(); x <= hi.x() + 1e-9; x += 1.0) {
    const double px = (x - lo.x()) * k;
    out += fmt::format("<line x1=\"{:.2f}\" y1=\"0\" x2=\"{:.2f}\" y2=\"{:.2f}\"/>\n", px, px, height);
  }
  for (double y = lo.y(); y <= hi.y() + 1e-9; y += 1.0) {
    const double py = (hi.y() - y) * k;
    out += fmt::format("<line x1=\"0\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\"/>\n", py, width, py);
  }
  out += "</g>\n";

  out += fmt::format(
      "<polygon class=\"boundary\" points=\"{}\" fill=\"none\" stroke=\"#9e9e9e\" stroke-width=\"2\" "
      "stroke-dasharray=\"8 4\"/>\n",
      poly_points(plan.boundary.vertices()));

  for (const RoomPolygon& r : plan.rooms) {
    out += fmt::format(
        "<polygon class=\"room\" data-id=\"{}\" points=\"{}\" fill=\"#f5f0e6\" stroke=\"black\" stroke-width=\"4\"/>\n",
        escape(r.id()), poly_points(r.vertices()));
    Vec2 c = Vec2::Zero();
    for (const Vec2& p : r.vertices()) c += p;
    c /= static_cast<double>(r.size());
    const Vec2 q = to_px(c);
    out += fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">{} "
        "({:.2f} m²)</text>\n",
        q.x(), q.y(), escape(r.id()), r.area());
  }

  for (const DoorPlacement& d : plan.doors) {
    const Vec2 along = geom::perp_cw(d.normal);
    const Vec2 hinge = d.center - along * (0.5 * d.width);
    const Vec2 latch = d.center + along * (0.5 * d.width);
    const Vec2 open = hinge + d.normal * d.width;
    const double r = d.width * k;
    out += fmt::format("<g class=\"door\" data-room=\"{}\" data-wall=\"{}\">\n", escape(d.room_id), d.wall_index);
    // Gap in the wall stroke.
    out += fmt::format("<path d=\"M {} L {}\" stroke=\"white\" stroke-width=\"6\"/>\n", xy(hinge), xy(latch));
    out += fmt::format("<path d=\"M {} L {}\" stroke=\"black\" stroke-width=\"2\" fill=\"none\"/>\n", xy(hinge),
                       xy(open));
    // Plan counter-clockwise is clockwise on the page (sweep flag 1).
    out += fmt::format("<path d=\"M {} A {:.2f} {:.2f} 0 0 1 {}\" stroke=\"black\" stroke-width=\"1\" fill=\"none\"/>\n",
                       xy(latch), r, r, xy(open));
    out += "</g>\n";
  }

  const double bar_y = height - 0.3 * k;
  out += "<g id=\"scale-bar\">\n";
  out += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"black\" stroke-width=\"3\"/>\n",
                     0.3 * k, bar_y, 1.3 * k, bar_y);
  out += fmt::format(
      "<text x=\"{:.2f}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">1 m</text>\n",
      0.8 * k, bar_y - 6.0);
  out += "</g>\n";
  out += "</svg>\n";
  return out;
}

void write_svg(const std::filesystem::path& path, const FloorPlan& plan, const SvgOptions& opts) {
  write_text_file(path, render_svg(plan, opts), "svg");
}

}  // namespace planforge
