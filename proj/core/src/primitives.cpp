#include "geo/primitives.hpp"

#include <cmath>

namespace geo {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::CoincidentObjects: return "CoincidentObjects";
    case ErrorCode::NotCollinear: return "NotCollinear";
    case ErrorCode::DegenerateQuadruple: return "DegenerateQuadruple";
    case ErrorCode::NotOnCurve: return "NotOnCurve";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::LineAtInfinity: return "LineAtInfinity";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::CenterInversion: return "CenterInversion";
    case ErrorCode::PoleProjection: return "PoleProjection";
    case ErrorCode::DegenerateRay: return "DegenerateRay";
    case ErrorCode::SingularConic: return "SingularConic";
    case ErrorCode::NoCenter: return "NoCenter";
    case ErrorCode::AsymptoticDirection: return "AsymptoticDirection";
    case ErrorCode::RealSecant: return "RealSecant";
    case ErrorCode::NoIntersection: return "NoIntersection";
    case ErrorCode::ConcentricCircles: return "ConcentricCircles";
    case ErrorCode::DegenerateProjectivity: return "DegenerateProjectivity";
    case ErrorCode::FundamentalPoint: return "FundamentalPoint";
    case ErrorCode::IndeterminateIntersection: return "IndeterminateIntersection";
    case ErrorCode::ExceptionalApproach: return "ExceptionalApproach";
    case ErrorCode::ComplexBasePoints: return "ComplexBasePoints";
    case ErrorCode::MalformedFigure: return "MalformedFigure";
    case ErrorCode::NotDraggable: return "NotDraggable";
    case ErrorCode::NoDependency: return "NoDependency";
    case ErrorCode::NameClash: return "NameClash";
    case ErrorCode::IllFormedBody: return "IllFormedBody";
    case ErrorCode::InexactInput: return "InexactInput";
    case ErrorCode::ZeroPullback: return "ZeroPullback";
    case ErrorCode::FundamentalComponent: return "FundamentalComponent";
    case ErrorCode::WrongMultiplicity: return "WrongMultiplicity";
  }
  return "Unknown";
}

Vec3 normalized_homogeneous(const Vec3& v) {
  if (!v.allFinite()) throw GeoError(ErrorCode::DegenerateInput, "non-finite homogeneous coordinates");
  Eigen::Index k = 0;
  const double m = v.cwiseAbs().maxCoeff(&k);
  if (m == 0.0) throw GeoError(ErrorCode::DegenerateInput, "all homogeneous coordinates are zero");
  Vec3 out = v / v[k];
  // Components exactly tied with the pivot in magnitude keep a stable sign.
  out[k] = 1.0;
  return out;
}

HPoint::HPoint(double x, double y, double w) : v_(normalized_homogeneous(Vec3(x, y, w))) {}

bool HPoint::is_infinite() const { return std::abs(v_.z()) < kEpsIncidence; }

Vec2 HPoint::affine() const {
  if (is_infinite()) throw GeoError(ErrorCode::DegenerateInput, "point at infinity has no affine coordinates");
  return Vec2(v_.x() / v_.z(), v_.y() / v_.z());
}

HLine::HLine(double a, double b, double c) : v_(normalized_homogeneous(Vec3(a, b, c))) {}

HLine HLine::through(const HPoint& p, const HPoint& q) {
  const Vec3 l = p.vec().cross(q.vec());
  if (l.norm() < kEpsIncidence) throw GeoError(ErrorCode::CoincidentObjects, "line through coincident points");
  return HLine(l);
}

bool HLine::is_at_infinity() const { return std::hypot(v_.x(), v_.y()) < kEpsIncidence; }

Vec2 HLine::direction() const {
  if (is_at_infinity()) throw GeoError(ErrorCode::LineAtInfinity, "line at infinity has no direction");
  return Vec2(-v_.y(), v_.x()).normalized();
}

Vec2 HLine::foot() const {
  if (is_at_infinity()) throw GeoError(ErrorCode::LineAtInfinity, "line at infinity has no finite point");
  const double n2 = v_.x() * v_.x() + v_.y() * v_.y();
  return Vec2(-v_.x() * v_.z() / n2, -v_.y() * v_.z() / n2);
}

double HLine::residual(const HPoint& p) const { return v_.dot(p.vec()); }

Circle::Circle(const Vec2& center, double radius) : center_(center), radius_(radius) {
  if (!(radius > 0.0) || !std::isfinite(radius) || !center.allFinite())
    throw GeoError(ErrorCode::DegenerateInput, "circle needs a finite center and positive radius");
}

Vec2 Circle::at(double angle) const { return center_ + radius_ * Vec2(std::cos(angle), std::sin(angle)); }

double Circle::angle_of(const Vec2& p) const {
  double a = std::atan2(p.y() - center_.y(), p.x() - center_.x());
  if (a < 0.0) a += 2.0 * M_PI;
  return a;
}

Conic Circle::to_conic() const {
  const double cx = center_.x(), cy = center_.y();
  return Conic::from_coefficients(1.0, 0.0, 1.0, -2.0 * cx, -2.0 * cy,
                                  cx * cx + cy * cy - radius_ * radius_);
}

Conic::Conic(const Mat3& m) {
  if (!m.allFinite()) throw GeoError(ErrorCode::DegenerateInput, "non-finite conic matrix");
  Mat3 s = 0.5 * (m + m.transpose());
  const double scale = s.cwiseAbs().maxCoeff();
  if (scale == 0.0) throw GeoError(ErrorCode::DegenerateInput, "zero conic matrix");
  m_ = s / scale;
}

Conic Conic::from_coefficients(double a, double b, double c, double d, double e, double f) {
  Mat3 m;
  m << a, b / 2, d / 2,
       b / 2, c, e / 2,
       d / 2, e / 2, f;
  return Conic(m);
}

Conic Conic::line_pair(const HLine& l1, const HLine& l2) {
  const Mat3 outer = l1.vec() * l2.vec().transpose();
  return Conic(outer + outer.transpose());
}

int Conic::rank() const {
  Eigen::JacobiSVD<Mat3> svd(m_);
  const auto& s = svd.singularValues();
  int r = 0;
  for (int i = 0; i < 3; ++i)
    if (s[i] > 1e-9 * s[0]) ++r;
  return r;
}

double distance(const HPoint& p, const HPoint& q) { return (p.affine() - q.affine()).norm(); }

bool same_point(const HPoint& p, const HPoint& q, double eps) {
  return p.vec().cross(q.vec()).norm() < eps;
}

bool same_line(const HLine& l, const HLine& m, double eps) {
  return l.vec().cross(m.vec()).norm() < eps;
}

bool incident(const HPoint& p, const HLine& l, double eps) {
  return std::abs(l.vec().normalized().dot(p.vec().normalized())) < eps;
}

double conic_distance(const Conic& a, const Conic& b) {
  // Fix sign by the largest entry of a, then compare Frobenius-normalized matrices.
  Mat3 ma = a.matrix() / a.matrix().norm();
  Mat3 mb = b.matrix() / b.matrix().norm();
  Eigen::Index r = 0, c = 0;
  ma.cwiseAbs().maxCoeff(&r, &c);
  if (ma(r, c) < 0) ma = -ma;
  if (mb(r, c) < 0) mb = -mb;
  return (ma - mb).cwiseAbs().maxCoeff();
}

}  // namespace geo
