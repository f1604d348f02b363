#include <algorithm>
#include <cmath>
#include <limits>

#include "geo/core.hpp"

namespace geo {
namespace {

struct LineFrame {
  Vec3 base;  // finite foot point (w = 1), or (1,0,0) for the line at infinity
  Vec3 dir;   // point at infinity along the line
};

LineFrame frame_of(const HLine& l) {
  if (l.is_at_infinity()) return {Vec3(1, 0, 0), Vec3(0, 1, 0)};
  const Vec2 f = l.foot();
  const Vec2 d = l.direction();
  return {Vec3(f.x(), f.y(), 1.0), Vec3(d.x(), d.y(), 0.0)};
}

struct Param {
  double value;  // +inf for the point at infinity of a finite line
  Intersection hit;
};

std::vector<Intersection> sorted(std::vector<Param> ps) {
  std::stable_sort(ps.begin(), ps.end(), [](const Param& a, const Param& b) { return a.value < b.value; });
  std::vector<Intersection> out;
  out.reserve(ps.size());
  for (auto& p : ps) out.push_back(p.hit);
  return out;
}

// Roots (t : s) of A t^2 + 2 B t s + C s^2 on the pencil s*base + t*dir.
std::vector<Param> line_conic(const HLine& l, const Mat3& m) {
  const LineFrame f = frame_of(l);
  double a = f.dir.dot(m * f.dir);
  double b = f.dir.dot(m * f.base);
  double c = f.base.dot(m * f.base);
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  if (scale < kEpsIncidence) throw GeoError(ErrorCode::CoincidentObjects, "line is a component of the conic");
  a /= scale;
  b /= scale;
  c /= scale;
  const double disc = b * b - a * c;

  auto make = [&](double t, double s, bool tangent) {
    const Vec3 v = s * f.base + t * f.dir;
    const double param = std::abs(s) < 1e-300 ? std::numeric_limits<double>::infinity() : t / s;
    return Param{param, Intersection{HPoint(v), tangent}};
  };

  std::vector<Param> out;
  if (std::abs(disc) < kEpsIncidence) {
    // Double root: (-b : a) or (c : -b), whichever is better conditioned.
    if (std::abs(a) >= std::abs(c))
      out.push_back(make(-b, a, true));
    else
      out.push_back(make(c, -b, true));
    return out;
  }
  if (disc < 0) return out;
  const double sq = std::sqrt(disc);
  const double q = -(b + std::copysign(sq, b));
  out.push_back(make(q, a, false));
  out.push_back(make(c, q, false));
  return out;
}

std::vector<Param> line_circle(const HLine& l, const Circle& c) {
  if (l.is_at_infinity()) return {};
  const Vec2 dir = l.direction();
  const double tc = l.parameter_of(c.center());
  const Vec2 foot = l.at(tc);
  const double r2 = c.radius() * c.radius();
  const double h2 = (foot - c.center()).squaredNorm();
  const double k2 = r2 - h2;
  std::vector<Param> out;
  if (std::abs(k2) < kEpsIncidence * r2) {
    out.push_back({tc, {HPoint::finite(foot), true}});
    return out;
  }
  if (k2 < 0) return out;
  const double k = std::sqrt(k2);
  out.push_back({tc - k, {HPoint::finite(foot - k * dir), false}});
  out.push_back({tc + k, {HPoint::finite(foot + k * dir), false}});
  return out;
}

std::vector<Intersection> by_angle(const Circle& c, const std::vector<Intersection>& pts) {
  std::vector<Param> ps;
  for (const auto& p : pts) ps.push_back({c.angle_of(p.point.affine()), p});
  return sorted(std::move(ps));
}

std::vector<Intersection> circle_circle(const Circle& c1, const Circle& c2) {
  const Vec2 delta = c2.center() - c1.center();
  const double d = delta.norm();
  const double r1 = c1.radius(), r2 = c2.radius();
  const double scale = std::max({r1, r2, d});
  if (d < kEpsIncidence * scale) {
    if (std::abs(r1 - r2) < kEpsIncidence * scale)
      throw GeoError(ErrorCode::CoincidentObjects, "identical circles");
    return {};
  }
  const Vec2 u = delta / d;
  const Vec2 perp(-u.y(), u.x());
  const double a = (d * d + r1 * r1 - r2 * r2) / (2 * d);
  const double h2 = r1 * r1 - a * a;
  std::vector<Intersection> pts;
  if (std::abs(h2) < kEpsIncidence * r1 * r1) {
    pts.push_back({HPoint::finite(c1.center() + a * u), true});
  } else if (h2 > 0) {
    const double h = std::sqrt(h2);
    pts.push_back({HPoint::finite(c1.center() + a * u + h * perp), false});
    pts.push_back({HPoint::finite(c1.center() + a * u - h * perp), false});
  }
  return by_angle(c1, pts);
}

std::vector<Intersection> line_line(const HLine& l1, const HLine& l2) {
  const Vec3 p = l1.vec().cross(l2.vec());
  if (p.norm() < kEpsIncidence) throw GeoError(ErrorCode::CoincidentObjects, "coincident lines");
  return {Intersection{HPoint(p), false}};
}

std::vector<Intersection> strip(std::vector<Param> ps) { return sorted(std::move(ps)); }

std::vector<Intersection> order_on_line(const HLine& l, const std::vector<Intersection>& pts) {
  std::vector<Param> ps;
  for (const auto& p : pts) {
    double t = std::numeric_limits<double>::infinity();
    if (!p.point.is_infinite() && !l.is_at_infinity()) t = l.parameter_of(p.point.affine());
    ps.push_back({t, p});
  }
  return sorted(std::move(ps));
}

}  // namespace

std::vector<Intersection> intersect(const Curve& a, const Curve& b) {
  return std::visit(
      [](const auto& x, const auto& y) -> std::vector<Intersection> {
        using X = std::decay_t<decltype(x)>;
        using Y = std::decay_t<decltype(y)>;
        if constexpr (std::is_same_v<X, HLine> && std::is_same_v<Y, HLine>) {
          return line_line(x, y);
        } else if constexpr (std::is_same_v<X, HLine> && std::is_same_v<Y, Circle>) {
          return strip(line_circle(x, y));
        } else if constexpr (std::is_same_v<X, Circle> && std::is_same_v<Y, HLine>) {
          return by_angle(x, strip(line_circle(y, x)));
        } else if constexpr (std::is_same_v<X, HLine> && std::is_same_v<Y, Conic>) {
          return strip(line_conic(x, y.matrix()));
        } else if constexpr (std::is_same_v<X, Conic> && std::is_same_v<Y, HLine>) {
          return order_on_line(y, strip(line_conic(y, x.matrix())));
        } else if constexpr (std::is_same_v<X, Circle> && std::is_same_v<Y, Circle>) {
          return circle_circle(x, y);
        } else {
          throw GeoError(ErrorCode::Unsupported, "general conic-conic intersection");
        }
      },
      a, b);
}

double cross_ratio(const HPoint& a, const HPoint& b, const HPoint& c, const HPoint& d) {
  const std::array<Vec3, 4> p = {a.vec().normalized(), b.vec().normalized(), c.vec().normalized(),
                                 d.vec().normalized()};
  // Carrier line from the best-conditioned pair.
  Vec3 line = Vec3::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const Vec3 l = p[i].cross(p[j]);
      if (l.norm() > line.norm()) line = l;
    }
  if (line.norm() < kEpsIncidence) throw GeoError(ErrorCode::DegenerateQuadruple, "all four points coincide");
  line.normalize();
  for (const auto& q : p)
    if (std::abs(line.dot(q)) > kEpsIncidence) throw GeoError(ErrorCode::NotCollinear, "points are not collinear");

  // Orthonormal basis of the plane through the origin that the line spans.
  const Vec3 e1 = line.unitOrthogonal();
  const Vec3 e2 = line.cross(e1);
  auto bracket = [&](int i, int j) {
    return p[i].dot(e1) * p[j].dot(e2) - p[i].dot(e2) * p[j].dot(e1);
  };
  const double ca = bracket(2, 0), db = bracket(3, 1), cb = bracket(2, 1), da = bracket(3, 0);
  for (double v : {ca, db, cb, da, bracket(0, 1), bracket(2, 3)})
    if (std::abs(v) < kEpsIncidence) throw GeoError(ErrorCode::DegenerateQuadruple, "coincident points");
  return (ca * db) / (cb * da);
}

bool collinear(const HPoint& a, const HPoint& b, const HPoint& c, double eps) {
  Mat3 m;
  m.col(0) = a.vec().normalized();
  m.col(1) = b.vec().normalized();
  m.col(2) = c.vec().normalized();
  return std::abs(m.determinant()) < eps;
}

Conic conic_through(std::span<const HPoint, 5> points) {
  for (int skip = 0; skip < 5; ++skip) {
    std::vector<HPoint> four;
    for (int i = 0; i < 5; ++i)
      if (i != skip) four.push_back(points[i]);
    if (collinear(four[0], four[1], four[2]) && collinear(four[0], four[1], four[3]) &&
        collinear(four[0], four[2], four[3]) && collinear(four[1], four[2], four[3]))
      throw GeoError(ErrorCode::DegenerateInput, "four of the five points are collinear");
  }
  // Padded with a zero row so the SVD is square.
  Eigen::Matrix<double, 6, 6> rows = Eigen::Matrix<double, 6, 6>::Zero();
  for (int i = 0; i < 5; ++i) {
    const Vec3 v = points[i].vec().normalized();
    const double x = v.x(), y = v.y(), w = v.z();
    rows.row(i) << x * x, x * y, y * y, x * w, y * w, w * w;
  }
  Eigen::JacobiSVD<Eigen::Matrix<double, 6, 6>> svd(rows, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (s[4] < 1e-12 * s[0]) throw GeoError(ErrorCode::DegenerateInput, "five points do not determine a unique conic");
  const Eigen::Matrix<double, 6, 1> k = svd.matrixV().col(5);
  return Conic::from_coefficients(k[0], k[1], k[2], k[3], k[4], k[5]);
}

HLine tangent_direction(const Conic& c, const HPoint& p) {
  const Vec3 v = p.vec().normalized();
  if (std::abs(v.dot(c.matrix() * v)) > kEpsIncidence)
    throw GeoError(ErrorCode::NotOnCurve, "point is not on the conic");
  const Vec3 l = c.matrix() * v;
  if (l.norm() < kEpsIncidence) throw GeoError(ErrorCode::SingularPoint, "conic is singular at the point");
  return HLine(l);
}

HLine tangent_direction(const Circle& c, const HPoint& p) {
  if (p.is_infinite()) throw GeoError(ErrorCode::NotOnCurve, "point at infinity is not on a circle");
  const Vec2 q = p.affine();
  const Vec2 n = q - c.center();
  if (std::abs(n.squaredNorm() - c.radius() * c.radius()) > kEpsIncidence * std::max(1.0, c.radius() * c.radius()))
    throw GeoError(ErrorCode::NotOnCurve, "point is not on the circle");
  return HLine(n.x(), n.y(), -n.dot(q));
}

double angle_between(const HLine& l1, const HLine& l2) {
  if (l1.is_at_infinity() || l2.is_at_infinity())
    throw GeoError(ErrorCode::LineAtInfinity, "angle with the line at infinity");
  const Vec2 n1(l1.a(), l1.b()), n2(l2.a(), l2.b());
  const double cr = std::abs(n1.x() * n2.y() - n1.y() * n2.x());
  const double dt = std::abs(n1.dot(n2));
  return std::atan2(cr, dt);
}

HLine parallel_through(const HLine& l, const HPoint& p) {
  if (l.is_at_infinity()) throw GeoError(ErrorCode::LineAtInfinity, "parallel to the line at infinity");
  const Vec3& v = p.vec();
  return HLine(l.a() * v.z(), l.b() * v.z(), -(l.a() * v.x() + l.b() * v.y()));
}

HLine perpendicular_through(const HLine& l, const HPoint& p) {
  if (l.is_at_infinity()) throw GeoError(ErrorCode::LineAtInfinity, "perpendicular to the line at infinity");
  const Vec3& v = p.vec();
  return HLine(-l.b() * v.z(), l.a() * v.z(), l.b() * v.x() - l.a() * v.y());
}

HPoint midpoint(const HPoint& a, const HPoint& b) { return HPoint::finite((a.affine() + b.affine()) / 2.0); }

}  // namespace geo
