#pragma once

#include <Eigen/Dense>

#include <variant>

#include "geo/errors.hpp"

namespace geo {

/// Incidence tolerance on max-abs normalized homogeneous coordinates.
inline constexpr double kEpsIncidence = 1e-9;

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Homogeneous point (x : y : w). Stored with max |component| = 1 and the
/// first nonzero component of largest magnitude made positive, so equal
/// points compare equal componentwise.
class HPoint {
 public:
  HPoint(double x, double y, double w = 1.0);
  explicit HPoint(const Vec3& v) : HPoint(v.x(), v.y(), v.z()) {}

  static HPoint finite(double x, double y) { return HPoint(x, y, 1.0); }
  static HPoint finite(const Vec2& p) { return HPoint(p.x(), p.y(), 1.0); }
  /// Point at infinity in direction (dx, dy).
  static HPoint at_infinity(double dx, double dy) { return HPoint(dx, dy, 0.0); }

  const Vec3& vec() const { return v_; }
  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double w() const { return v_.z(); }

  bool is_infinite() const;
  /// Affine coordinates; throws DegenerateInput for points at infinity.
  Vec2 affine() const;

 private:
  Vec3 v_;
};

/// Line a x + b y + c w = 0, normalized like HPoint.
class HLine {
 public:
  HLine(double a, double b, double c);
  explicit HLine(const Vec3& v) : HLine(v.x(), v.y(), v.z()) {}

  static HLine at_infinity() { return HLine(0.0, 0.0, 1.0); }
  static HLine through(const HPoint& p, const HPoint& q);

  const Vec3& vec() const { return v_; }
  double a() const { return v_.x(); }
  double b() const { return v_.y(); }
  double c() const { return v_.z(); }

  bool is_at_infinity() const;
  /// Unit direction vector of a finite line.
  Vec2 direction() const;
  /// Closest point to the origin; the base of the canonical parametrization.
  Vec2 foot() const;
  /// Canonical affine parametrization foot() + t * direction().
  Vec2 at(double t) const { return foot() + t * direction(); }
  double parameter_of(const Vec2& p) const { return (p - foot()).dot(direction()); }
  /// Signed residual of a point, scale-free for normalized inputs.
  double residual(const HPoint& p) const;

 private:
  Vec3 v_;
};

class Conic;

/// Metric circle; keeps center/radius exactly in addition to the conic form.
class Circle {
 public:
  Circle(const Vec2& center, double radius);
  Circle(double cx, double cy, double radius) : Circle(Vec2(cx, cy), radius) {}

  const Vec2& center() const { return center_; }
  double radius() const { return radius_; }
  HPoint center_point() const { return HPoint::finite(center_); }
  Vec2 at(double angle) const;
  double angle_of(const Vec2& p) const;
  Conic to_conic() const;

 private:
  Vec2 center_;
  double radius_;
};

/// Conic p^T M p = 0 with a symmetric coefficient matrix (max-abs = 1).
class Conic {
 public:
  explicit Conic(const Mat3& m);
  /// a x^2 + b xy + c y^2 + d x + e y + f = 0.
  static Conic from_coefficients(double a, double b, double c, double d, double e, double f);
  /// Reducible conic consisting of two lines.
  static Conic line_pair(const HLine& l1, const HLine& l2);

  const Mat3& matrix() const { return m_; }
  double eval(const HPoint& p) const { return p.vec().dot(m_ * p.vec()); }
  int rank() const;
  bool is_degenerate() const { return rank() < 3; }
  /// Upper-left 2x2 block: the quadratic part.
  Eigen::Matrix2d quadratic_part() const { return m_.topLeftCorner<2, 2>(); }

 private:
  Mat3 m_;
};

using GenCircle = std::variant<Circle, HLine>;

/// Scale a 3-vector to max-abs 1; throws DegenerateInput on a zero vector.
Vec3 normalized_homogeneous(const Vec3& v);
/// Distance between finite points.
double distance(const HPoint& p, const HPoint& q);
/// True if the two homogeneous points coincide (within kEpsIncidence).
bool same_point(const HPoint& p, const HPoint& q, double eps = kEpsIncidence);
bool same_line(const HLine& l, const HLine& m, double eps = kEpsIncidence);
bool incident(const HPoint& p, const HLine& l, double eps = kEpsIncidence);
/// Matrix distance between conics after scale and sign normalization.
double conic_distance(const Conic& a, const Conic& b);

}  // namespace geo
