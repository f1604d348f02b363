#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace geo::cons {

/// Kind of value a construction object evaluates to.
/// Polygon is a closed chain of segments; it is declared with the
/// `segment` keyword.
enum class Kind { Point, Line, Segment, Ray, Circle, Conic, Scalar, Polyline, Polygon };

std::string_view to_string(Kind k);

enum class ToolId {
  FreePoint,
  PointOn,
  LineThrough,
  Segment,
  Ray,
  CircleCenterPoint,
  Intersect,
  Parallel,
  Perpendicular,
  Midpoint,
  Compass,
  CircleCenterRadius,
  AngleMeasure,
  Polar,
  Invert,
  BhInvert,
  Locus,
  ConicThrough,
  Polygon,
  Distance,
  Ratio,
};

/// Set of accepted input kinds, as a bit mask over Kind.
using KindMask = unsigned;
constexpr KindMask mask(Kind k) { return 1u << static_cast<unsigned>(k); }
inline constexpr KindMask kLinear = mask(Kind::Line) | mask(Kind::Segment) | mask(Kind::Ray);
inline constexpr KindMask kCurve = kLinear | mask(Kind::Circle) | mask(Kind::Conic);

struct ToolSpec {
  ToolId id;
  std::string_view name;
  /// Accepted kinds per input position; the last entry repeats when variadic.
  std::vector<KindMask> inputs;
  bool variadic = false;
  int min_inputs = 0;
  int min_params = 0;
  int max_params = 0;
  Kind output = Kind::Point;
  /// Multi-valued step with a branch selector (intersect).
  bool branching = false;
  /// Takes a numeric measure or returns one: tagged NON-EUCLIDEAN-INPUT.
  bool non_euclidean = false;
  bool draggable = false;
  /// Compound tool that is available wherever this base tool is.
  std::optional<ToolId> made_of;
};

const std::vector<ToolSpec>& tool_table();
const ToolSpec& tool_spec(ToolId id);
std::optional<ToolId> find_tool(std::string_view name);

/// Declared type keyword ("point", "circle", ...) for a kind.
std::string_view type_keyword(Kind k);
std::optional<Kind> kind_from_keyword(std::string_view kw);

/// Permitted tool set: the rules of a construction game.
struct Toolset {
  std::string name;
  std::set<ToolId> allowed;

  bool allows(ToolId id) const;
  friend bool operator==(const Toolset&, const Toolset&) = default;
};

/// Free points, points on curves, lines, segments, rays, circles and
/// explicit intersections.
Toolset postulates_only();
/// Adds perpendicular, parallel, midpoint and compass.
Toolset euclid_book1();
Toolset full_toolset();
std::optional<Toolset> toolset_by_name(std::string_view name);

}  // namespace geo::cons
