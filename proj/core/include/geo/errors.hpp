#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace geo {

enum class ErrorCode {
  DegenerateInput,
  CoincidentObjects,
  NotCollinear,
  DegenerateQuadruple,
  NotOnCurve,
  SingularPoint,
  LineAtInfinity,
  Unsupported,
  // transforms
  CenterInversion,
  PoleProjection,
  DegenerateRay,
  SingularConic,
  NoCenter,
  AsymptoticDirection,
  RealSecant,
  NoIntersection,
  ConcentricCircles,
  DegenerateProjectivity,
  FundamentalPoint,
  IndeterminateIntersection,
  ExceptionalApproach,
  ComplexBasePoints,
  // construction engine
  MalformedFigure,
  NotDraggable,
  NoDependency,
  NameClash,
  IllFormedBody,
  // curve algebra
  InexactInput,
  ZeroPullback,
  FundamentalComponent,
  WrongMultiplicity,
};

std::string_view to_string(ErrorCode code);

class GeoError : public std::runtime_error {
 public:
  GeoError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace geo
