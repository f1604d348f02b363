#include "geo/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace geo::io {

using cons::format_number;

std::string trace_csv(const cons::LocusTrace& trace) {
  std::string out = "t,x,y,exists\n";
  for (const auto& s : trace.samples) {
    out += format_number(s.t) + ",";
    if (s.exists) out += format_number(s.position.x()) + "," + format_number(s.position.y()) + ",1\n";
    else out += ",,0\n";
  }
  return out;
}

namespace {

struct Extent {
  double x0 = std::numeric_limits<double>::infinity();
  double y0 = x0;
  double x1 = -x0;
  double y1 = -x0;

  void add(const Vec2& p) {
    if (!p.allFinite()) return;
    x0 = std::min(x0, p.x());
    y0 = std::min(y0, p.y());
    x1 = std::max(x1, p.x());
    y1 = std::max(y1, p.y());
  }
  bool empty() const { return x0 > x1; }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string pt(const Vec2& p) { return num(p.x()) + "," + num(-p.y()); }

// Clips the line to the box; returns false when it misses.
bool clip(const HLine& l, const Box& b, Vec2& p, Vec2& q) {
  const Vec2 d = l.direction();
  const Vec2 f = l.foot();
  double lo = -std::numeric_limits<double>::infinity();
  double hi = -lo;
  auto slab = [&](double origin, double dir, double mn, double mx) {
    if (std::abs(dir) < 1e-15) return origin >= mn && origin <= mx;
    double a = (mn - origin) / dir, c = (mx - origin) / dir;
    if (a > c) std::swap(a, c);
    lo = std::max(lo, a);
    hi = std::min(hi, c);
    return lo <= hi;
  };
  if (!slab(f.x(), d.x(), b.x0, b.x1) || !slab(f.y(), d.y(), b.y0, b.y1)) return false;
  p = f + lo * d;
  q = f + hi * d;
  return true;
}

std::string polyline_elems(const cons::PolylineValue& poly, const std::string& style) {
  std::string out;
  for (const auto& piece : poly.pieces) {
    if (piece.empty()) continue;
    const bool closed = poly.closed && poly.pieces.size() == 1;
    out += std::string("  <") + (closed ? "polygon" : "polyline") + " points=\"";
    for (size_t i = 0; i < piece.size(); ++i) out += (i ? " " : "") + pt(piece[i]);
    out += "\" " + style + "/>\n";
  }
  return out;
}

}  // namespace

Box bounding_box(const cons::Scene& scene, const std::vector<cons::PolylineValue>& traces) {
  Extent e;
  for (const auto& o : scene.objects()) {
    if (!o.exists || o.internal) continue;
    if (const auto* p = std::get_if<HPoint>(&o.value)) {
      if (!p->is_infinite()) e.add(p->affine());
    } else if (const auto* s = std::get_if<cons::SegmentValue>(&o.value)) {
      e.add(s->a.affine());
      e.add(s->b.affine());
    } else if (const auto* r = std::get_if<cons::RayValue>(&o.value)) {
      e.add(r->origin.affine());
    } else if (const auto* c = std::get_if<Circle>(&o.value)) {
      e.add(c->center() - Vec2::Constant(c->radius()));
      e.add(c->center() + Vec2::Constant(c->radius()));
    } else if (const auto* pl = std::get_if<cons::PolylineValue>(&o.value)) {
      for (const auto& piece : pl->pieces)
        for (const auto& q : piece) e.add(q);
    }
  }
  for (const auto& t : traces)
    for (const auto& piece : t.pieces)
      for (const auto& q : piece) e.add(q);
  if (e.empty()) return {-1, -1, 1, 1};
  Box b{e.x0, e.y0, e.x1, e.y1};
  if (b.x1 - b.x0 < 1e-12) b.x0 -= 0.5, b.x1 += 0.5;
  if (b.y1 - b.y0 < 1e-12) b.y0 -= 0.5, b.y1 += 0.5;
  return b;
}

std::string render_svg(const cons::Scene& scene, const std::vector<cons::PolylineValue>& traces) {
  Box b = bounding_box(scene, traces);
  const double mx = 0.05 * (b.x1 - b.x0), my = 0.05 * (b.y1 - b.y0);
  b = {b.x0 - mx, b.y0 - my, b.x1 + mx, b.y1 + my};
  const double size = std::max(b.x1 - b.x0, b.y1 - b.y0);
  const std::string stroke = num(size * 0.003);

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + num(b.x0) + " " + num(-b.y1) + " " +
         num(b.x1 - b.x0) + " " + num(b.y1 - b.y0) + "\">\n";
  const std::string thin = "fill=\"none\" stroke=\"#888\" stroke-width=\"" + stroke + "\"";
  out += " <g id=\"construction\">\n";
  for (const auto& o : scene.objects()) {
    if (!o.exists || o.internal) continue;
    if (const auto* l = std::get_if<HLine>(&o.value)) {
      Vec2 p, q;
      if (l->is_at_infinity() || !clip(*l, b, p, q)) continue;
      out += "  <line x1=\"" + num(p.x()) + "\" y1=\"" + num(-p.y()) + "\" x2=\"" + num(q.x()) + "\" y2=\"" +
             num(-q.y()) + "\" " + thin + "/>\n";
    } else if (const auto* s = std::get_if<cons::SegmentValue>(&o.value)) {
      const Vec2 p = s->a.affine(), q = s->b.affine();
      out += "  <line x1=\"" + num(p.x()) + "\" y1=\"" + num(-p.y()) + "\" x2=\"" + num(q.x()) + "\" y2=\"" +
             num(-q.y()) + "\" " + thin + "/>\n";
    } else if (const auto* r = std::get_if<cons::RayValue>(&o.value)) {
      Vec2 p, q;
      const HLine l = HLine::through(r->origin, r->through);
      if (!clip(l, b, p, q)) continue;
      const Vec2 o0 = r->origin.affine();
      const Vec2 dir = r->through.affine() - o0;
      const Vec2 end = (q - o0).dot(dir) > (p - o0).dot(dir) ? q : p;
      out += "  <line x1=\"" + num(o0.x()) + "\" y1=\"" + num(-o0.y()) + "\" x2=\"" + num(end.x()) + "\" y2=\"" +
             num(-end.y()) + "\" " + thin + "/>\n";
    } else if (const auto* c = std::get_if<Circle>(&o.value)) {
      out += "  <circle cx=\"" + num(c->center().x()) + "\" cy=\"" + num(-c->center().y()) + "\" r=\"" +
             num(c->radius()) + "\" " + thin + "/>\n";
    } else if (const auto* pl = std::get_if<cons::PolylineValue>(&o.value)) {
      out += polyline_elems(*pl, thin);
    }
  }
  for (const auto& o : scene.objects()) {
    if (!o.exists || o.internal) continue;
    if (const auto* p = std::get_if<HPoint>(&o.value)) {
      if (p->is_infinite()) continue;
      const Vec2 a = p->affine();
      out += "  <circle cx=\"" + num(a.x()) + "\" cy=\"" + num(-a.y()) + "\" r=\"" + num(size * 0.006) +
             "\" fill=\"" + (o.draggable ? "#1f5fbf" : "#333") + "\"><title>" + o.id + "</title></circle>\n";
    }
  }
  out += " </g>\n <g id=\"trace\">\n";
  const std::string bold = "fill=\"none\" stroke=\"#c0392b\" stroke-width=\"" + num(size * 0.004) + "\"";
  for (const auto& t : traces) out += polyline_elems(t, bold);
  out += " </g>\n</svg>\n";
  return out;
}

std::string describe_value(const cons::SceneObject& o) {
  if (!o.exists) return "(does not exist)";
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, HPoint>) {
          if (v.is_infinite()) return "direction (" + format_number(v.vec().x()) + ", " + format_number(v.vec().y()) + ")";
          const Vec2 a = v.affine();
          return "(" + format_number(a.x()) + ", " + format_number(a.y()) + ")";
        } else if constexpr (std::is_same_v<T, HLine>) {
          return format_number(v.vec().x()) + "x + " + format_number(v.vec().y()) + "y + " +
                 format_number(v.vec().z()) + " = 0";
        } else if constexpr (std::is_same_v<T, cons::SegmentValue>) {
          const Vec2 a = v.a.affine(), b = v.b.affine();
          return "[(" + format_number(a.x()) + ", " + format_number(a.y()) + "), (" + format_number(b.x()) + ", " +
                 format_number(b.y()) + ")] length " + format_number((b - a).norm());
        } else if constexpr (std::is_same_v<T, cons::RayValue>) {
          const Vec2 a = v.origin.affine(), b = v.through.affine();
          return "from (" + format_number(a.x()) + ", " + format_number(a.y()) + ") through (" +
                 format_number(b.x()) + ", " + format_number(b.y()) + ")";
        } else if constexpr (std::is_same_v<T, Circle>) {
          return "center (" + format_number(v.center().x()) + ", " + format_number(v.center().y()) + ") radius " +
                 format_number(v.radius());
        } else if constexpr (std::is_same_v<T, Conic>) {
          const Mat3& m = v.matrix();
          return format_number(m(0, 0)) + "x^2 + " + format_number(2 * m(0, 1)) + "xy + " + format_number(m(1, 1)) +
                 "y^2 + " + format_number(2 * m(0, 2)) + "x + " + format_number(2 * m(1, 2)) + "y + " +
                 format_number(m(2, 2)) + " = 0";
        } else if constexpr (std::is_same_v<T, double>) {
          return format_number(v);
        } else if constexpr (std::is_same_v<T, cons::PolylineValue>) {
          size_t n = 0;
          for (const auto& p : v.pieces) n += p.size();
          return std::to_string(v.pieces.size()) + " piece(s), " + std::to_string(n) + " samples";
        } else {
          return "-";
        }
      },
      o.value);
}

}  // namespace geo::io
