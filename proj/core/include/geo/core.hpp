#pragma once

#include <array>
#include <span>
#include <variant>
#include <vector>

#include "geo/primitives.hpp"

namespace geo {

/// Operand of intersect(): lines, circles and conics.
using Curve = std::variant<HLine, Circle, Conic>;

struct Intersection {
  HPoint point;
  /// True when two roots merged (tangency); the point is reported once.
  bool tangent = false;
};

/// Intersection of two curves, ordered by the parameter along the first
/// operand: the canonical line parameter, or the counterclockwise angle
/// in [0, 2pi) for a circle. For conic-first the second operand's order is
/// used. Circle-vs-general-conic is rejected with Unsupported.
std::vector<Intersection> intersect(const Curve& a, const Curve& b);

/// (A,B;C,D) = (c-a)(d-b) / ((c-b)(d-a)) for four collinear points.
double cross_ratio(const HPoint& a, const HPoint& b, const HPoint& c, const HPoint& d);

/// The conic through five points, no four of them collinear.
Conic conic_through(std::span<const HPoint, 5> points);

/// Tangent line m*p at a point of the curve.
HLine tangent_direction(const Conic& c, const HPoint& p);
HLine tangent_direction(const Circle& c, const HPoint& p);

/// Unsigned angle in [0, pi/2] between two finite lines.
double angle_between(const HLine& l1, const HLine& l2);

// Elementary constructions used by the tool table.
HLine parallel_through(const HLine& l, const HPoint& p);
HLine perpendicular_through(const HLine& l, const HPoint& p);
HPoint midpoint(const HPoint& a, const HPoint& b);
/// Collinearity test on normalized coordinates.
bool collinear(const HPoint& a, const HPoint& b, const HPoint& c, double eps = kEpsIncidence);

}  // namespace geo
