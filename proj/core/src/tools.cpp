#include "geo/tools.hpp"

#include <algorithm>

namespace geo::cons {

std::string_view to_string(Kind k) {
  switch (k) {
    case Kind::Point: return "point";
    case Kind::Line: return "line";
    case Kind::Segment: return "segment";
    case Kind::Ray: return "ray";
    case Kind::Circle: return "circle";
    case Kind::Conic: return "conic";
    case Kind::Scalar: return "scalar";
    case Kind::Polyline: return "polyline";
    case Kind::Polygon: return "polygon";
  }
  return "?";
}

std::string_view type_keyword(Kind k) {
  switch (k) {
    case Kind::Polyline: return "locus";
    case Kind::Polygon: return "segment";
    default: return to_string(k);
  }
}

std::optional<Kind> kind_from_keyword(std::string_view kw) {
  for (Kind k : {Kind::Point, Kind::Line, Kind::Segment, Kind::Ray, Kind::Circle, Kind::Conic, Kind::Scalar,
                 Kind::Polyline})
    if (type_keyword(k) == kw) return k;
  return std::nullopt;
}

const std::vector<ToolSpec>& tool_table() {
  constexpr KindMask P = mask(Kind::Point);
  constexpr KindMask S = mask(Kind::Scalar);
  constexpr KindMask Circ = mask(Kind::Circle);
  constexpr KindMask Quad = mask(Kind::Circle) | mask(Kind::Conic);
  static const std::vector<ToolSpec> table = {
      {ToolId::FreePoint, "free_point", {}, false, 0, 2, 2, Kind::Point, false, false, true, {}},
      {ToolId::PointOn, "point_on", {kLinear | Circ}, false, 1, 1, 1, Kind::Point, false, false, true, {}},
      {ToolId::LineThrough, "line_through", {P, P}, false, 2, 0, 0, Kind::Line, false, false, false, {}},
      {ToolId::Segment, "segment", {P, P}, false, 2, 0, 0, Kind::Segment, false, false, false, {}},
      {ToolId::Ray, "ray", {P, P}, false, 2, 0, 0, Kind::Ray, false, false, false, {}},
      {ToolId::CircleCenterPoint, "circle_center_point", {P, P}, false, 2, 0, 0, Kind::Circle, false, false, false, {}},
      {ToolId::Intersect, "intersect", {kCurve, kCurve}, false, 2, 0, 1, Kind::Point, true, false, false, {}},
      {ToolId::Parallel, "parallel", {kLinear, P}, false, 2, 0, 0, Kind::Line, false, false, false, {}},
      {ToolId::Perpendicular, "perpendicular", {kLinear, P}, false, 2, 0, 0, Kind::Line, false, false, false, {}},
      {ToolId::Midpoint, "midpoint", {P, P}, false, 2, 0, 0, Kind::Point, false, false, false, {}},
      {ToolId::Compass, "compass", {mask(Kind::Segment), P}, false, 2, 0, 0, Kind::Circle, false, false, false, {}},
      {ToolId::CircleCenterRadius, "circle_center_radius", {P}, false, 1, 1, 1, Kind::Circle, false, true, false, {}},
      {ToolId::AngleMeasure, "angle_measure", {P, P, P}, false, 3, 0, 0, Kind::Scalar, false, true, false, {}},
      {ToolId::Polar, "polar", {Quad, P}, false, 2, 0, 0, Kind::Line, false, false, false, {}},
      {ToolId::Invert, "invert", {Circ, P}, false, 2, 0, 0, Kind::Point, false, false, false, {}},
      {ToolId::BhInvert, "bh_invert", {Quad, P, P}, false, 3, 0, 0, Kind::Point, false, false, false, {}},
      {ToolId::Locus, "locus", {P, P, kLinear | Circ}, false, 3, 0, 1, Kind::Polyline, false, false, false, {}},
      {ToolId::ConicThrough, "conic_through", {P, P, P, P, P}, false, 5, 0, 0, Kind::Conic, false, false, false, {}},
      {ToolId::Polygon, "polygon", {P}, true, 3, 0, 0, Kind::Polygon, false, false, false, ToolId::Segment},
      {ToolId::Distance, "distance", {P, P}, false, 2, 0, 0, Kind::Scalar, false, true, false, {}},
      {ToolId::Ratio, "ratio", {S, S}, false, 2, 0, 0, Kind::Scalar, false, true, false, {}},
  };
  return table;
}

const ToolSpec& tool_spec(ToolId id) {
  const auto& t = tool_table();
  return *std::find_if(t.begin(), t.end(), [id](const ToolSpec& s) { return s.id == id; });
}

std::optional<ToolId> find_tool(std::string_view name) {
  for (const auto& s : tool_table())
    if (s.name == name) return s.id;
  return std::nullopt;
}

bool Toolset::allows(ToolId id) const {
  if (allowed.count(id)) return true;
  const auto& spec = tool_spec(id);
  return spec.made_of && allowed.count(*spec.made_of) > 0;
}

Toolset postulates_only() {
  return {"POSTULATES_ONLY",
          {ToolId::FreePoint, ToolId::PointOn, ToolId::LineThrough, ToolId::Segment, ToolId::Ray,
           ToolId::CircleCenterPoint, ToolId::Intersect}};
}

Toolset euclid_book1() {
  Toolset t = postulates_only();
  t.name = "EUCLID_BOOK1";
  t.allowed.insert({ToolId::Perpendicular, ToolId::Parallel, ToolId::Midpoint, ToolId::Compass});
  return t;
}

Toolset full_toolset() {
  Toolset t{"FULL", {}};
  for (const auto& s : tool_table()) t.allowed.insert(s.id);
  return t;
}

std::optional<Toolset> toolset_by_name(std::string_view name) {
  if (name == "POSTULATES_ONLY") return postulates_only();
  if (name == "EUCLID_BOOK1") return euclid_book1();
  if (name == "FULL") return full_toolset();
  return std::nullopt;
}

}  // namespace geo::cons
