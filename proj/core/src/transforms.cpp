#include "geo/transforms.hpp"

#include <array>
#include <cmath>

namespace geo {

// ---------------------------------------------------------------------------
// Inversion and stereographic projection

HPoint invert_point(const Circle& c, const HPoint& p) {
  if (p.is_infinite()) return c.center_point();
  const Vec2 d = p.affine() - c.center();
  const double d2 = d.squaredNorm();
  if (d2 < kEpsIncidence * kEpsIncidence * std::max(1.0, c.radius() * c.radius()))
    throw GeoError(ErrorCode::CenterInversion, "the center of inversion has no affine image");
  return HPoint::finite(c.center() + (c.radius() * c.radius() / d2) * d);
}

GenCircle invert_gencircle(const Circle& c, const GenCircle& g) {
  const Vec2 o = c.center();
  const double r2 = c.radius() * c.radius();
  if (const auto* line = std::get_if<HLine>(&g)) {
    if (line->is_at_infinity()) throw GeoError(ErrorCode::LineAtInfinity, "image of the line at infinity is the center");
    if (incident(c.center_point(), *line)) return *line;
    // Foot of the perpendicular from the center inverts to the far end of a diameter.
    const Vec2 foot = line->at(line->parameter_of(o));
    const Vec2 far = invert_point(c, HPoint::finite(foot)).affine();
    return Circle((o + far) / 2.0, (far - o).norm() / 2.0);
  }
  const auto& circ = std::get<Circle>(g);
  const Vec2 oc = circ.center() - o;
  const double dist = oc.norm();
  const double rho = circ.radius();
  if (std::abs(dist - rho) < kEpsIncidence * std::max(1.0, rho)) {
    // Through the center: the antipode of the center maps to the foot of the image line.
    const Vec2 foot = o + (r2 / (2.0 * dist * dist)) * oc;
    return HLine(oc.x(), oc.y(), -oc.dot(foot));
  }
  const Vec2 u = dist > 0.0 ? Vec2(oc / dist) : Vec2(1.0, 0.0);
  const Vec2 p1 = invert_point(c, HPoint::finite(circ.center() + rho * u)).affine();
  const Vec2 p2 = invert_point(c, HPoint::finite(circ.center() - rho * u)).affine();
  return Circle((p1 + p2) / 2.0, (p1 - p2).norm() / 2.0);
}

SpherePoint::SpherePoint(double x, double y, double z) : v_(x, y, z) {
  if (!v_.allFinite() || std::abs(v_.squaredNorm() - 1.0) > 1e-12)
    throw GeoError(ErrorCode::DegenerateInput, "point is not on the unit sphere");
}

HPoint stereo_project(StereoPole pole, const SpherePoint& s) {
  const Eigen::Vector3d& v = s.vec();
  const double sign = pole == StereoPole::North ? 1.0 : -1.0;
  if ((v - Eigen::Vector3d(0, 0, sign)).norm() < 1e-12)
    throw GeoError(ErrorCode::PoleProjection, "projection of the projection pole");
  return HPoint(v.x(), v.y(), 1.0 - sign * v.z());
}

SpherePoint stereo_lift(StereoPole pole, const HPoint& p) {
  const Vec2 q = p.affine();
  const double r2 = q.squaredNorm();
  const double sign = pole == StereoPole::North ? 1.0 : -1.0;
  return SpherePoint(2 * q.x() / (r2 + 1), 2 * q.y() / (r2 + 1), sign * (r2 - 1) / (r2 + 1));
}

HPoint ns_composition(const HPoint& p) {
  if (p.is_infinite()) return HPoint::finite(0.0, 0.0);
  try {
    return stereo_project(StereoPole::South, stereo_lift(StereoPole::North, p));
  } catch (const GeoError& e) {
    if (e.code() == ErrorCode::PoleProjection)
      throw GeoError(ErrorCode::CenterInversion, "the origin lifts to the south pole");
    throw;
  }
}

Eigen::Vector4d central_project(const Eigen::Vector3d& center, const Plane& src, const Plane& dst,
                                const Eigen::Vector3d& p) {
  const double scale = std::max({1.0, center.norm(), p.norm()});
  auto on = [&](const Plane& pl, const Eigen::Vector3d& x) {
    return std::abs(pl.normal.dot(x) - pl.offset) < kEpsIncidence * scale * pl.normal.norm();
  };
  if (on(src, center) || on(dst, center))
    throw GeoError(ErrorCode::DegenerateInput, "projection center lies on a plane");
  if (!on(src, p)) throw GeoError(ErrorCode::DegenerateInput, "point is not on the source plane");
  const Eigen::Vector3d ray = p - center;
  if (ray.norm() < kEpsIncidence * scale) throw GeoError(ErrorCode::DegenerateRay, "point equals the center");
  const double w = dst.normal.dot(ray);
  const double s = dst.offset - dst.normal.dot(center);
  Eigen::Vector4d out;
  out.head<3>() = w * center + s * ray;
  out[3] = w;
  if (std::abs(w) < kEpsIncidence * ray.norm() * dst.normal.norm()) {
    out.head<3>() = ray;
    out[3] = 0.0;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pole and polar

namespace {
void require_nonsingular(const Conic& c) {
  if (c.rank() < 3) throw GeoError(ErrorCode::SingularConic, "pole/polar needs a nondegenerate conic");
}
}  // namespace

HLine polar(const Conic& c, const HPoint& p) {
  require_nonsingular(c);
  return HLine(c.matrix() * p.vec());
}

HPoint pole(const Conic& c, const HLine& l) {
  require_nonsingular(c);
  return HPoint(c.matrix().inverse() * l.vec());
}

HPoint harmonic_conjugate(const HPoint& a, const HPoint& b, const HPoint& c) {
  if (a.is_infinite() || b.is_infinite())
    throw GeoError(ErrorCode::DegenerateInput, "harmonic conjugate needs finite A and B");
  if (same_point(a, b)) throw GeoError(ErrorCode::DegenerateInput, "A and B coincide");
  if (same_point(c, a) || same_point(c, b)) throw GeoError(ErrorCode::DegenerateInput, "C coincides with A or B");
  if (!collinear(a, b, c)) throw GeoError(ErrorCode::DegenerateInput, "C is not on line AB");
  const Vec2 pa = a.affine(), pb = b.affine();
  const Circle diameter((pa + pb) / 2.0, (pb - pa).norm() / 2.0);
  if (!c.is_infinite() && (c.affine() - diameter.center()).norm() < kEpsIncidence * diameter.radius()) {
    const Vec2 d = pb - pa;
    return HPoint::at_infinity(d.x(), d.y());
  }
  return invert_point(diameter, c);
}

// ---------------------------------------------------------------------------
// Conjugate conics

Conic conjugate_conic(const Conic& c, const Vec2& dir) {
  const Mat3& m = c.matrix();
  const Eigen::Matrix2d q = m.topLeftCorner<2, 2>();
  if (std::abs(q.determinant()) < kEpsIncidence) throw GeoError(ErrorCode::NoCenter, "conic has no center");
  const Vec2 center = -q.inverse() * m.topRightCorner<2, 1>();
  const Vec2 u = dir.normalized();
  const double beta = u.dot(q * u);
  if (std::abs(beta) < kEpsIncidence * q.norm())
    throw GeoError(ErrorCode::AsymptoticDirection, "direction is asymptotic");
  // Linear form giving the coordinate along u in the frame (conjugate diameter, u).
  const Vec2 n = q * u;
  const Vec3 coord = Vec3(n.x(), n.y(), -n.dot(center)) / beta;
  return Conic(m - 2.0 * beta * coord * coord.transpose());
}

std::pair<HPoint, HPoint> ideal_chord(const Conic& c, const HLine& l) {
  const auto real = intersect(l, c);
  if (real.size() == 2) throw GeoError(ErrorCode::RealSecant, "line meets the conic in real points");
  if (real.size() == 1) return {real[0].point, real[0].point};
  if (l.is_at_infinity()) throw GeoError(ErrorCode::LineAtInfinity, "ideal chord on the line at infinity");
  const auto ideal = intersect(l, conjugate_conic(c, l.direction()));
  if (ideal.empty()) throw GeoError(ErrorCode::NoIntersection, "line misses the conjugate conic");
  if (ideal.size() == 1) return {ideal[0].point, ideal[0].point};
  return {ideal[0].point, ideal[1].point};
}

HLine ideal_common_secant(const Circle& c1, const Circle& c2) {
  const Vec2 a = c1.center(), b = c2.center();
  const double scale = std::max({1.0, c1.radius(), c2.radius()});
  if ((a - b).norm() < kEpsIncidence * scale) throw GeoError(ErrorCode::ConcentricCircles, "circles are concentric");
  const double r1 = c1.radius(), r2 = c2.radius();
  return HLine(2 * (b.x() - a.x()), 2 * (b.y() - a.y()),
               a.squaredNorm() - r1 * r1 - b.squaredNorm() + r2 * r2);
}

// ---------------------------------------------------------------------------
// Organic generation

std::pair<HLine, HLine> pencil_basis(const HPoint& p) {
  std::array<Vec3, 3> cand = {p.vec().cross(Vec3::UnitX()), p.vec().cross(Vec3::UnitY()),
                              p.vec().cross(Vec3::UnitZ())};
  // Prefer the horizontal/vertical pair; fall back to the line through the origin.
  std::array<int, 3> order = {1, 0, 2};
  std::vector<Vec3> picked;
  for (int i : order)
    if (cand[i].norm() > 1e-6) picked.push_back(cand[i]);
  if (picked.size() < 2) throw GeoError(ErrorCode::DegenerateInput, "no pencil basis");
  return {HLine(picked[0]), HLine(picked[1])};
}

HLine Projectivity::line_at(const Vec2& param, bool at_target) const {
  const auto [l1, l2] = pencil_basis(at_target ? target : source);
  return HLine(param.x() * l1.vec() + param.y() * l2.vec());
}

Vec2 Projectivity::source_param(const HLine& l) const {
  const auto [l1, l2] = pencil_basis(source);
  Eigen::Matrix<double, 3, 2> basis;
  basis.col(0) = l1.vec();
  basis.col(1) = l2.vec();
  return basis.colPivHouseholderQr().solve(l.vec());
}

std::optional<HPoint> organic_point(const Projectivity& sigma, const Vec2& param) {
  const HLine r = sigma.line_at(param, false);
  const HLine s = sigma.image(param);
  const Vec3 meet = r.vec().cross(s.vec());
  if (meet.norm() < kEpsIncidence) return std::nullopt;
  return HPoint(meet);
}

OrganicConic organic_conic(const Projectivity& sigma) {
  if (same_point(sigma.source, sigma.target))
    throw GeoError(ErrorCode::DegenerateProjectivity, "pencil vertices coincide");
  if (std::abs(sigma.matrix.determinant()) < kEpsIncidence * sigma.matrix.squaredNorm())
    throw GeoError(ErrorCode::DegenerateProjectivity, "singular projectivity");

  const HLine pq = HLine::through(sigma.source, sigma.target);
  const Vec2 pq_param = sigma.source_param(pq);
  if (same_line(sigma.image(pq_param), pq, 1e-9)) {
    // Perspectivity: the meets run along an axis, plus the line PQ itself.
    std::vector<HPoint> axis_pts;
    for (double ang : {0.3, 1.1, 1.9, 2.6}) {
      const Vec2 t(std::cos(ang), std::sin(ang));
      if (std::abs(t.x() * pq_param.y() - t.y() * pq_param.x()) < 1e-6 * pq_param.norm()) continue;
      if (auto p = organic_point(sigma, t)) axis_pts.push_back(*p);
      if (axis_pts.size() == 2) break;
    }
    if (axis_pts.size() < 2 || same_point(axis_pts[0], axis_pts[1]))
      throw GeoError(ErrorCode::DegenerateProjectivity, "cannot locate the perspectivity axis");
    return {Conic::line_pair(pq, HLine::through(axis_pts[0], axis_pts[1])), true};
  }

  for (double offset : {0.37, 0.11, 0.73}) {
    std::array<HPoint, 5> pts = {HPoint(0, 0), HPoint(0, 0), HPoint(0, 0), HPoint(0, 0), HPoint(0, 0)};
    int n = 0;
    for (int k = 0; k < 5; ++k) {
      const double ang = M_PI * (k + offset) / 5.0;
      auto p = organic_point(sigma, Vec2(std::cos(ang), std::sin(ang)));
      if (!p || same_point(*p, sigma.source, 1e-6) || same_point(*p, sigma.target, 1e-6)) break;
      pts[n++] = *p;
    }
    if (n < 5) continue;
    try {
      return {conic_through(std::span<const HPoint, 5>(pts)), false};
    } catch (const GeoError&) {
    }
  }
  throw GeoError(ErrorCode::DegenerateProjectivity, "could not sample five locus points");
}

// ---------------------------------------------------------------------------
// Bellavitis-Hirst inversion

HPoint BHConfig::fundamental(Fundamental f) const {
  switch (f) {
    case Fundamental::A: return pole;
    case Fundamental::B:
      if (!base_b) throw GeoError(ErrorCode::ComplexBasePoints, "base point B is not real");
      return *base_b;
    case Fundamental::C:
      if (!base_c) throw GeoError(ErrorCode::ComplexBasePoints, "base point C is not real");
      return *base_c;
  }
  return pole;
}

BHConfig make_bh_config(const Conic& gamma, const HPoint& a) {
  if (gamma.rank() < 3) throw GeoError(ErrorCode::SingularConic, "fundamental conic is degenerate");
  const Vec3 an = a.vec().normalized();
  if (std::abs(an.dot(gamma.matrix() * an)) < kEpsIncidence)
    throw GeoError(ErrorCode::DegenerateInput, "pole lies on the fundamental conic");
  BHConfig cfg{gamma, a, std::nullopt, std::nullopt};
  const auto base = intersect(polar(gamma, a), gamma);
  if (base.size() == 2) {
    HPoint b = base[0].point, c = base[1].point;
    if (!a.is_infinite() && !b.is_infinite() && !c.is_infinite()) {
      const Vec2 pa = a.affine(), pb = b.affine(), pc = c.affine();
      const Vec2 ab = pb - pa, ac = pc - pa;
      if (ab.x() * ac.y() - ab.y() * ac.x() < 0) std::swap(b, c);
    }
    cfg.base_b = b;
    cfg.base_c = c;
  }
  return cfg;
}

BHConfig canonical_bh_config() {
  const Conic gamma = Conic::from_coefficients(1.0, 0.0, 1.0, -2.0, -2.0 / std::sqrt(3.0), 1.0);
  BHConfig cfg = make_bh_config(gamma, HPoint::finite(0.0, 0.0));
  // Snap the base points to their exact values.
  cfg.base_b = HPoint::finite(1.0, 0.0);
  cfg.base_c = HPoint::finite(0.5, std::sqrt(3.0) / 2.0);
  return cfg;
}

Circle canonical_incircle() { return Circle(0.5, std::sqrt(3.0) / 6.0, std::sqrt(3.0) / 6.0); }

HPoint bh_invert(const BHConfig& cfg, const HPoint& p) {
  if (same_point(p, cfg.pole)) throw GeoError(ErrorCode::FundamentalPoint, "P is the pole A");
  if ((cfg.base_b && same_point(p, *cfg.base_b)) || (cfg.base_c && same_point(p, *cfg.base_c)))
    throw GeoError(ErrorCode::FundamentalPoint, "P is a base point");
  const Vec3 pn = p.vec().normalized();
  const Vec3 pol = cfg.gamma.matrix() * pn;
  const Vec3 join = cfg.pole.vec().normalized().cross(pn);
  const Vec3 meet = join.cross(pol);
  if (meet.norm() < kEpsIncidence * join.norm() * pol.norm())
    throw GeoError(ErrorCode::IndeterminateIntersection, "line AP coincides with the polar of P");
  return HPoint(meet);
}

Conic bh_line_image(const BHConfig& cfg, const HLine& l) {
  const Mat3& g = cfg.gamma.matrix();
  const Vec3 a = cfg.pole.vec();
  const Mat3 k = (g * a) * l.vec().transpose();
  return Conic(0.5 * (k + k.transpose()) - l.vec().dot(a) * g);
}

HPoint bh_blowup_limit(const BHConfig& cfg, Fundamental base, const HLine& approach) {
  const HPoint x = cfg.fundamental(base);
  if (!incident(x, approach)) throw GeoError(ErrorCode::DegenerateInput, "approach line misses the fundamental point");
  for (auto other : {Fundamental::A, Fundamental::B, Fundamental::C}) {
    if (other == base) continue;
    if (other != Fundamental::A && !cfg.has_real_base()) continue;
    if (incident(cfg.fundamental(other), approach))
      throw GeoError(ErrorCode::ExceptionalApproach, "approach along a fundamental line");
  }
  // Second point D of the approach line.
  Vec3 d;
  if (!approach.is_at_infinity() && !x.is_infinite()) {
    const Vec2 dir = approach.direction();
    d = Vec3(dir.x(), dir.y(), 0.0);
  } else {
    d = approach.vec().cross(x.vec().cross(Vec3::UnitZ()).norm() > 1e-6 ? x.vec().cross(Vec3::UnitZ())
                                                                         : x.vec().cross(Vec3::UnitX()));
  }
  const Mat3& g = cfg.gamma.matrix();
  const Vec3 a = cfg.pole.vec();
  const Vec3 xv = x.vec();
  const Vec3 lim = a.dot(g * d) * xv + a.dot(g * xv) * d - 2.0 * xv.dot(g * d) * a;
  if (lim.norm() < kEpsIncidence * d.norm()) throw GeoError(ErrorCode::ExceptionalApproach, "vanishing first-order term");
  return HPoint(lim);
}

}  // namespace geo
