#include "geo/verify.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "geo/construction.hpp"
#include "geo/curves.hpp"
#include "geo/dsl.hpp"
#include "geo/transforms.hpp"

#ifndef GEO_CORPUS_DIR
#define GEO_CORPUS_DIR "corpus"
#endif

namespace geo::verify {

using namespace geo::cons;
using alg::ExactPoint;
using alg::PlaneCurve;
using alg::Poly;
using alg::QS3;

bool SuiteResult::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

Options default_options() {
  Options o;
  if (const char* s = std::getenv("GEO_SEED")) o.seed = std::strtoull(s, nullptr, 10);
  const char* dir = std::getenv("GEO_CORPUS_DIR");
  o.corpus_dir = dir ? dir : GEO_CORPUS_DIR;
  return o;
}

std::string format(const std::string& suite, const Check& c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e %s %.3e", c.measured, c.relation.c_str(), c.threshold);
  std::string out = std::string(c.passed ? "[PASS] " : "[FAIL] ") + suite + "/" + c.name + "  " + buf;
  if (!c.detail.empty()) out += "  " + c.detail;
  return out;
}

namespace {

using Rng = std::mt19937_64;
constexpr double kPi = std::numbers::pi;

Check below(std::string name, double measured, double threshold, std::string detail = "") {
  return Check{std::move(name), measured < threshold, measured, threshold, "<", std::move(detail)};
}

Check above(std::string name, double measured, double threshold, std::string detail = "") {
  return Check{std::move(name), measured > threshold, measured, threshold, ">", std::move(detail)};
}

Check equal(std::string name, double measured, double expected, std::string detail = "") {
  return Check{std::move(name), measured == expected, measured, expected, "==", std::move(detail)};
}

Check holds(std::string name, bool ok, std::string detail = "") {
  return Check{std::move(name), ok, ok ? 1.0 : 0.0, 1.0, "==", std::move(detail)};
}

Figure load(const Options& opt, const std::string& file) {
  std::ifstream in(opt.corpus_dir + "/" + file);
  if (!in) throw GeoError(ErrorCode::MalformedFigure, "cannot open corpus file " + file);
  std::stringstream ss;
  ss << in.rdbuf();
  return dsl::parse_or_throw(ss.str());
}

Vec2 point_of(const Scene& s, const ObjectId& id) {
  const SceneObject& o = s.at(id);
  if (!o.exists) throw GeoError(ErrorCode::DegenerateInput, "object '" + id + "' does not exist");
  return std::get<HPoint>(o.value).affine();
}

double scalar_of(const Scene& s, const ObjectId& id) {
  const SceneObject& o = s.at(id);
  if (!o.exists) throw GeoError(ErrorCode::DegenerateInput, "object '" + id + "' does not exist");
  return std::get<double>(o.value);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

double relerr(const Vec2& a, const Vec2& b) { return (a - b).norm() / std::max(1.0, b.norm()); }

// Residual of a point on a line, both normalized.
double line_residual(const HLine& l, const Vec2& p) {
  const Vec3 v = l.vec() / l.vec().head<2>().norm();
  return std::abs(v.dot(Vec3(p.x(), p.y(), 1.0))) / std::max(1.0, p.norm());
}

// ---------------------------------------------------------------------------

void golden_section(const Options& opt, SuiteResult& r) {
  const auto t0 = std::chrono::steady_clock::now();
  const Figure fig = load(opt, "golden_section.geo");
  const Scene s = evaluate(fig);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double cut = scalar_of(s, "cut");
  const double phi_inv = (std::sqrt(5.0) - 1.0) / 2.0;
  r.checks.push_back(below("BK/AB = (sqrt5-1)/2", std::abs(cut - phi_inv), 1e-9, "BK/AB = " + fmt("%.12f", cut)));
  const double major = scalar_of(s, "major"), minor = scalar_of(s, "minor");
  r.checks.push_back(below("AB:BK = BK:KA", std::abs(major - minor), 1e-9,
                           "AB:BK = " + fmt("%.12f", major) + ", BK:KA = " + fmt("%.12f", minor)));
  r.checks.push_back(below("runtime seconds", secs, 1.0));
}

double chain_gap(const Scene& s, const std::string& first, const std::string& last) {
  return (point_of(s, first) - point_of(s, last)).norm();
}

void decagon(const Options& opt, SuiteResult& r) {
  const Scene s = evaluate(load(opt, "decagon.geo"));
  r.checks.push_back(below("10 chords of BK close", chain_gap(s, "P0", "P10"), 1e-8));
  const double trig = std::abs(2.0 * std::sin(kPi / 10.0) - (std::sqrt(5.0) - 1.0) / 2.0);
  r.checks.push_back(below("2 sin(pi/10) = (sqrt5-1)/2", trig, 1e-12));
  const double side = (point_of(s, "X") - point_of(s, "K")).norm();
  r.checks.push_back(below("BK = decagon side", std::abs(side - 2.0 * std::sin(kPi / 10.0)), 1e-9));
}

void closure(const Options& opt, SuiteResult& r) {
  const Scene hex = evaluate(load(opt, "hexagon.geo"));
  r.checks.push_back(below("hexagon gap", chain_gap(hex, "P0", "P6"), 1e-9));

  const Scene tw = evaluate(load(opt, "twelve_chords.geo"));
  const Vec2 p0 = point_of(tw, "P0"), p12 = point_of(tw, "P12");
  const double measured = std::abs(std::remainder(std::atan2(p12.y(), p12.x()) - std::atan2(p0.y(), p0.x()), 2 * kPi));
  const double oracle = std::abs(2 * kPi - 12 * 2 * std::asin(0.25));
  r.checks.push_back(above("half-radius 12-chord gap (rad)", measured, 0.2));
  r.checks.push_back(below("12-chord gap vs arc-sum oracle", std::abs(measured - oracle), 1e-9,
                           "oracle " + fmt("%.12f", oracle)));

  const Scene oct = evaluate(load(opt, "octagon_approx.geo"));
  r.checks.push_back(above("approximate octagon does not close", chain_gap(oct, "P0", "P8"), 1e-3));
}

bool only_postulate_tools(const Figure& fig) {
  const Toolset ts = postulates_only();
  for (const auto& s : expand(fig))
    if (!ts.allows(s.tool)) return false;
  return true;
}

void toolset(const Options& opt, SuiteResult& r) {
  const Figure e1 = load(opt, "euclid_I1.geo");
  r.checks.push_back(holds("Euclid I.1 declares POSTULATES_ONLY", e1.toolset().name == "POSTULATES_ONLY"));
  r.checks.push_back(equal("Euclid I.1 violations", check_toolset(e1, postulates_only()).size(), 0));
  const Scene s1 = evaluate(e1);
  const Vec2 a = point_of(s1, "A"), b = point_of(s1, "B"), c = point_of(s1, "C");
  const double eq = std::max(std::abs((c - a).norm() - (b - a).norm()), std::abs((c - b).norm() - (b - a).norm()));
  r.checks.push_back(below("Euclid I.1 equilateral", eq, 1e-9));

  const Figure par = load(opt, "parallel_postulate.geo");
  const auto v = check_toolset(par, postulates_only());
  r.checks.push_back(equal("parallel script violations", v.size(), 1, v.empty() ? "" : "at " + v[0].step));

  const Figure i2 = load(opt, "compass_I2.geo");
  r.checks.push_back(equal("compass via I.2 macro violations", check_toolset(i2, postulates_only()).size(), 0));
  r.checks.push_back(holds("expansion uses postulate tools only", only_postulate_tools(i2)));
  const Scene s2 = evaluate(i2);
  const double transport =
      std::abs((point_of(s2, "D") - point_of(s2, "C")).norm() - (point_of(s2, "B") - point_of(s2, "A")).norm());
  r.checks.push_back(below("|CD| = |AB|", transport, 1e-9));
}

Circle random_circle(Rng& rng) { return Circle(Vec2(uniform(rng, -3, 3), uniform(rng, -3, 3)), uniform(rng, 0.3, 3)); }

Vec2 random_point_away(Rng& rng, const Vec2& center, double min_dist) {
  while (true) {
    Vec2 p(uniform(rng, -6, 6), uniform(rng, -6, 6));
    if ((p - center).norm() > min_dist) return p;
  }
}

// Max relative residual of the inverses of points of g on the image.
double image_residual(const Circle& inv, const std::vector<Vec2>& samples, const GenCircle& image) {
  double worst = 0;
  for (const auto& p : samples) {
    const Vec2 q = invert_point(inv, HPoint::finite(p)).affine();
    if (const auto* c = std::get_if<Circle>(&image)) {
      worst = std::max(worst, std::abs((q - c->center()).norm() - c->radius()) / std::max(1.0, c->radius()));
    } else {
      worst = std::max(worst, line_residual(std::get<HLine>(image), q));
    }
  }
  return worst;
}

void inversion(const Options& opt, SuiteResult& r) {
  Rng rng(opt.seed);
  constexpr int kTrials = 1000;
  double invol = 0, fixed = 0, ortho = 0, cls = 0;
  int wrong_kind = 0;
  for (int i = 0; i < kTrials; ++i) {
    const Circle c = random_circle(rng);
    const Vec2 p = random_point_away(rng, c.center(), 0.05 * c.radius());
    const HPoint once = invert_point(c, HPoint::finite(p));
    invol = std::max(invol, relerr(invert_point(c, once).affine(), p));

    const Vec2 on = c.at(uniform(rng, 0, 2 * kPi));
    fixed = std::max(fixed, relerr(invert_point(c, HPoint::finite(on)).affine(), on));

    // Orthogonal: |q - O|^2 = r^2 + rho^2.
    const double dist = c.radius() * uniform(rng, 1.05, 4.0);
    const double ang = uniform(rng, 0, 2 * kPi);
    const Vec2 q = c.center() + dist * Vec2(std::cos(ang), std::sin(ang));
    const Circle orth(q, std::sqrt(dist * dist - c.radius() * c.radius()));
    const GenCircle img = invert_gencircle(c, orth);
    if (const auto* ic = std::get_if<Circle>(&img)) {
      ortho = std::max(ortho, std::max((ic->center() - orth.center()).norm(), std::abs(ic->radius() - orth.radius())) /
                                  std::max(1.0, orth.radius()));
    } else {
      ++wrong_kind;
    }

    // Four classes: circle off/through the center, line off/through it.
    const int cls_kind = i % 4;
    GenCircle g = c;
    std::vector<Vec2> samples;
    bool expect_line = false;
    if (cls_kind < 2) {
      const Vec2 center = random_point_away(rng, c.center(), 0.2);
      const double rad = cls_kind == 0 ? uniform(rng, 0.2, 3) : (center - c.center()).norm();
      if (cls_kind == 0 && std::abs((center - c.center()).norm() - rad) < 0.1) continue;
      const Circle gc(center, rad);
      g = gc;
      expect_line = cls_kind == 1;
      for (int k = 0; k < 8; ++k) {
        const Vec2 s = gc.at(uniform(rng, 0, 2 * kPi));
        if ((s - c.center()).norm() > 0.05 * c.radius()) samples.push_back(s);
      }
    } else {
      const Vec2 through = cls_kind == 3 ? c.center() : random_point_away(rng, c.center(), 0.2);
      const double a = uniform(rng, 0, kPi);
      const HLine l = HLine::through(HPoint::finite(through), HPoint::finite(through + Vec2(std::cos(a), std::sin(a))));
      g = l;
      expect_line = cls_kind == 3;
      for (int k = 0; k < 8; ++k) {
        const Vec2 s = l.at(uniform(rng, -6, 6));
        if ((s - c.center()).norm() > 0.05 * c.radius()) samples.push_back(s);
      }
    }
    const GenCircle image = invert_gencircle(c, g);
    if (std::holds_alternative<HLine>(image) != expect_line) ++wrong_kind;
    cls = std::max(cls, image_residual(c, samples, image));
  }
  r.checks.push_back(below("involution (1000 trials)", invol, 1e-9));
  r.checks.push_back(below("circle of inversion fixed (1000 trials)", fixed, 1e-9));
  r.checks.push_back(below("orthogonal circles invariant (1000 trials)", ortho, 1e-9));
  r.checks.push_back(below("circle/line images (1000 trials)", cls, 1e-9));
  r.checks.push_back(equal("misclassified images", wrong_kind, 0));
}

void stereo(const Options& opt, SuiteResult& r) {
  Rng rng(opt.seed + 1);
  const Circle unit(Vec2::Zero(), 1.0);
  double worst = 0, lift = 0;
  for (int i = 0; i < 1000; ++i) {
    const Vec2 p = random_point_away(rng, Vec2::Zero(), 1e-2);
    const HPoint hp = HPoint::finite(p);
    worst = std::max(worst, relerr(ns_composition(hp).affine(), invert_point(unit, hp).affine()));
    lift = std::max(lift, relerr(stereo_project(StereoPole::North, stereo_lift(StereoPole::North, hp)).affine(), p));
  }
  r.checks.push_back(below("N/S composition = inversion (1000 trials)", worst, 1e-10));
  r.checks.push_back(below("project(lift(p)) = p (1000 trials)", lift, 1e-10));
}

Conic random_ellipse(Rng& rng, Vec2* center) {
  const double a = uniform(rng, 0.5, 3), b = uniform(rng, 0.5, 3), t = uniform(rng, 0, kPi);
  const Vec2 c(uniform(rng, -2, 2), uniform(rng, -2, 2));
  if (center) *center = c;
  const double ct = std::cos(t), st = std::sin(t);
  // Rotated axes: ((x-c).u / a)^2 + ((x-c).v / b)^2 = 1
  Eigen::Matrix2d rot;
  rot << ct, -st, st, ct;
  const Eigen::Matrix2d q = rot * Eigen::Vector2d(1 / (a * a), 1 / (b * b)).asDiagonal() * rot.transpose();
  Mat3 m = Mat3::Zero();
  m.topLeftCorner<2, 2>() = q;
  m.topRightCorner<2, 1>() = -q * c;
  m.bottomLeftCorner<1, 2>() = (-q * c).transpose();
  m(2, 2) = c.dot(q * c) - 1;
  return Conic(m);
}

void harmonic(const Options& opt, SuiteResult& r) {
  Rng rng(opt.seed + 2);
  double worst = 0, constructed = 0;
  for (int i = 0; i < 1000; ++i) {
    const Circle c = random_circle(rng);
    const double ang = uniform(rng, 0, 2 * kPi);
    const Vec2 u(std::cos(ang), std::sin(ang));
    const HPoint a = HPoint::finite(c.center() - c.radius() * u), b = HPoint::finite(c.center() + c.radius() * u);
    double s;
    do s = uniform(rng, -5, 5);
    while (std::abs(std::abs(s) - 1) < 0.05 || std::abs(s) < 0.05);
    const HPoint pc = HPoint::finite(c.center() + s * c.radius() * u);
    const HPoint pc2 = invert_point(c, pc);
    worst = std::max(worst, std::abs(cross_ratio(a, b, pc, pc2) + 1.0));
    constructed = std::max(constructed, std::abs(cross_ratio(a, b, pc, harmonic_conjugate(a, b, pc)) + 1.0));
  }
  r.checks.push_back(below("inversion quadruples (A,B;C,C') = -1 (1000 trials)", worst, 1e-9));
  r.checks.push_back(below("harmonic_conjugate cross-ratio (1000 trials)", constructed, 1e-9));

  double polar_res = 0;
  int secants = 0;
  Vec2 center;
  const Conic conic = random_ellipse(rng, &center);
  HPoint p = HPoint::finite(center + Vec2(8, 3));
  const HLine pl = polar(conic, p);
  while (secants < 50) {
    const double ang = uniform(rng, 0, kPi);
    const HLine l = HLine::through(p, HPoint::finite(p.affine() + Vec2(std::cos(ang), std::sin(ang))));
    const auto hits = intersect(l, conic);
    if (hits.size() != 2 || hits[0].tangent) continue;
    ++secants;
    const HPoint d = harmonic_conjugate(hits[0].point, hits[1].point, p);
    polar_res = std::max(polar_res, line_residual(pl, d.affine()));
  }
  r.checks.push_back(below("harmonic conjugates lie on the polar (50 secants)", polar_res, 1e-8));
}

void radical_axis(const Options& opt, SuiteResult& r) {
  const HLine axis = ideal_common_secant(Circle(Vec2(0, 0), 1), Circle(Vec2(3, 0), 1));
  r.checks.push_back(below("x^2+y^2=1, (x-3)^2+y^2=1 -> x = 3/2", line_residual(axis, Vec2(1.5, 0)) +
                                                                      line_residual(axis, Vec2(1.5, 7)),
                           1e-12));

  Rng rng(opt.seed + 3);
  double tangent = 0;
  int done = 0;
  while (done < 100) {
    const Circle c1 = random_circle(rng), c2 = random_circle(rng);
    const double d = (c1.center() - c2.center()).norm();
    if (d < c1.radius() + c2.radius() + 0.1) continue;
    const HLine l = ideal_common_secant(c1, c2);
    const Vec2 t = l.at(uniform(rng, -5, 5));
    const double t1 = std::sqrt((t - c1.center()).squaredNorm() - c1.radius() * c1.radius());
    const double t2 = std::sqrt((t - c2.center()).squaredNorm() - c2.radius() * c2.radius());
    tangent = std::max(tangent, std::abs(t1 - t2) / std::max(1.0, t1));
    ++done;
  }
  r.checks.push_back(below("equal tangent lengths (100 axis points)", tangent, 1e-9));

  // Sweep the second center from disjoint to intersecting circles.
  const Circle c1(Vec2(0, 0), 1.0);
  const double h = 0.01;
  double max_jump = 0, real_res = 0;
  int real_frames = 0;
  std::optional<double> last;
  for (double x = 3.0; x > 0.5; x -= h) {
    const Circle c2(Vec2(x, 0.2), 0.8);
    const HLine l = ideal_common_secant(c1, c2);
    const Vec2 foot = l.foot();
    const double offset = foot.norm();
    if (last) max_jump = std::max(max_jump, std::abs(offset - *last) / h);
    last = offset;
    const auto hits = intersect(c1, c2);
    if (hits.size() == 2) {
      ++real_frames;
      for (const auto& p : hits) real_res = std::max(real_res, line_residual(l, p.point.affine()));
    }
  }
  r.checks.push_back(below("axis through real intersections during sweep", real_res, 1e-9,
                           std::to_string(real_frames) + " intersecting frames"));
  r.checks.push_back(below("axis displacement per unit drag", max_jump, 2.0));
}

void conjugate(const Options& opt, SuiteResult& r) {
  const Conic unit = Circle(Vec2::Zero(), 1.0).to_conic();
  const Conic conj = conjugate_conic(unit, Vec2(0, 1));
  const Mat3 expected = Vec3(1, -1, -1).asDiagonal();
  r.checks.push_back(equal("unit circle -> x^2 - y^2 = 1 (exact)", (conj.matrix() - expected).cwiseAbs().maxCoeff(), 0));

  const Figure fig = load(opt, "conjugate_conic.geo");
  const Scene base = evaluate(fig);
  const Conic c = std::get<Conic>(base.at("c").value);
  const HLine rdir = std::get<HLine>(base.at("r").value);
  double worst = 0;
  int lines = 0, missing = 0;
  for (int k = 0; k < 20; ++k) {
    const double t = (k % 2 ? -1.0 : 1.0) * (2.5 + 0.25 * (k / 2));
    const Scene s = evaluate(fig.with_params("N", {t}));
    const Vec2 n = point_of(s, "N");
    const HLine l = parallel_through(rdir, HPoint::finite(n));
    std::pair<HPoint, HPoint> ends(HPoint::finite(0, 0), HPoint::finite(0, 0));
    try {
      ends = ideal_chord(c, l);
    } catch (const GeoError&) {
      continue;
    }
    ++lines;
    if (!s.at("U").exists || !s.at("V").exists) {
      ++missing;
      continue;
    }
    const Vec2 u = point_of(s, "U"), v = point_of(s, "V");
    const Vec2 e1 = ends.first.affine(), e2 = ends.second.affine();
    const double err = std::min(std::max(relerr(u, e1), relerr(v, e2)), std::max(relerr(u, e2), relerr(v, e1)));
    worst = std::max(worst, err);
  }
  r.checks.push_back(equal("lines tested", lines, 20));
  r.checks.push_back(equal("construction failures", missing, 0));
  r.checks.push_back(below("macro U, V = ideal chord endpoints (20 lines)", worst, 1e-8));
}

Vec2 closed_form_image(const Vec2& p) {
  const double x = p.x(), y = p.y(), s3 = std::sqrt(3.0);
  const double d = -3 * x + 3 * x * x - s3 * y + 3 * y * y;
  return Vec2(-(3 * x - 3 * x * x - s3 * x * y) / d, y * (-3 + 3 * x + s3 * y) / d);
}

void bh_closed_form(const Options& opt, SuiteResult& r) {
  const BHConfig cfg = canonical_bh_config();
  Rng rng(opt.seed + 4);
  double worst = 0;
  int done = 0;
  while (done < 1000) {
    const Vec2 p(uniform(rng, -1.5, 2.5), uniform(rng, -1.5, 2.5));
    const double x = p.x(), y = p.y();
    const double d = -3 * x + 3 * x * x - std::sqrt(3.0) * y + 3 * y * y;
    if (std::abs(d) < 1e-2) continue;
    HPoint img = HPoint::finite(0, 0);
    try {
      img = bh_invert(cfg, HPoint::finite(p));
    } catch (const GeoError&) {
      continue;
    }
    if (img.is_infinite()) continue;
    worst = std::max(worst, relerr(img.affine(), closed_form_image(p)));
    ++done;
  }
  r.checks.push_back(below("polar meet line = closed form (1000 points)", worst, 1e-9));
  const Vec2 centroid(0.5, std::sqrt(3.0) / 6);
  r.checks.push_back(below("centroid fixed", (bh_invert(cfg, HPoint::finite(centroid)).affine() - centroid).norm(), 1e-12));
}

alg::QuadraticMap canonical_map() { return alg::bh_map_polys(alg::canonical_exact_config()); }

int t_for(const alg::FundamentalLine& l, const std::array<int, 3>& t) { return t[l.contracted_to - 'A']; }

void degree_law(const Options& opt, SuiteResult& r) {
  const auto t0 = std::chrono::steady_clock::now();
  const alg::QuadraticMap q = canonical_map();
  const std::array<ExactPoint, 3> pts = q.fundamental;
  const std::array<Poly, 3> forbidden = {q.lines[0].form, q.lines[1].form, q.lines[2].form};
  Rng rng(opt.seed + 5);
  int cases = 0, degree_ok = 0, exponents_ok = 0, generation_failed = 0;
  std::string first_bad;
  for (int n = 1; n <= 4; ++n) {
    for (int ta = 0; ta <= 2; ++ta)
      for (int tb = 0; tb <= 2; ++tb)
        for (int tc = 0; tc <= 2; ++tc) {
          const std::array<int, 3> t = {ta, tb, tc};
          if (ta > n || tb > n || tc > n || ta + tb > n || ta + tc > n || tb + tc > n) continue;
          ++cases;
          const auto curve = alg::curve_with_multiplicities(n, pts, t, forbidden, rng);
          if (!curve) {
            ++generation_failed;
            if (first_bad.empty()) first_bad = "no curve for n=" + std::to_string(n);
            continue;
          }
          const alg::StrictTransform st = alg::strict_transform(*curve, q);
          const int expected = 2 * n - ta - tb - tc;
          if (st.curve.degree() == expected) ++degree_ok;
          else if (first_bad.empty())
            first_bad = "n=" + std::to_string(n) + " t=" + std::to_string(ta) + std::to_string(tb) +
                        std::to_string(tc) + " degree " + std::to_string(st.curve.degree());
          bool ex = st.exceptional.size() == 3;
          for (const auto& e : st.exceptional) ex = ex && e.exponent == t_for(e.line, t);
          if (ex) ++exponents_ok;
        }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.checks.push_back(equal("feasible (n, t) cases with exact degree 2n - tA - tB - tC", degree_ok, cases,
                           first_bad.empty() ? std::to_string(cases) + " cases" : first_bad));
  r.checks.push_back(equal("exceptional exponents = multiplicities", exponents_ok, cases));
  r.checks.push_back(equal("curve generation failures", generation_failed, 0));
  r.checks.push_back(below("runtime seconds", secs, 60.0));
}

PlaneCurve incircle_curve(const QS3& r2) {
  return PlaneCurve(alg::exact_circle_poly(QS3::ratio(1, 2), QS3(alg::Rat(0), alg::Rat(1, 6)), r2));
}

// Least-squares complex similarity z -> alpha z + beta.
std::pair<std::complex<double>, std::complex<double>> fit_similarity(const std::vector<std::complex<double>>& from,
                                                                     const std::vector<std::complex<double>>& to) {
  const double n = static_cast<double>(from.size());
  std::complex<double> mz = 0, mw = 0;
  for (size_t i = 0; i < from.size(); ++i) {
    mz += from[i] / n;
    mw += to[i] / n;
  }
  std::complex<double> num = 0;
  double den = 0;
  for (size_t i = 0; i < from.size(); ++i) {
    num += std::conj(from[i] - mz) * (to[i] - mw);
    den += std::norm(from[i] - mz);
  }
  const std::complex<double> alpha = num / den;
  return {alpha, mw - alpha * mz};
}

double max_gradient_gap(const PlaneCurve& c, const std::vector<HPoint>& samples, const std::vector<Vec2>& avoid) {
  double norm = 0;
  for (const auto& [m, coef] : c.poly().terms()) norm += coef.to_double() * coef.to_double();
  norm = std::sqrt(norm);
  const std::array<Poly, 3> grad = {c.poly().derivative(0), c.poly().derivative(1), c.poly().derivative(2)};
  double least = std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    bool near = false;
    for (const auto& a : avoid) near = near || (s.affine() - a).norm() < 0.05;
    if (near) continue;
    const Vec3 v = s.vec();
    const double scale = std::pow(v.cwiseAbs().maxCoeff(), c.degree() - 1);
    const Vec3 g(grad[0].eval(v), grad[1].eval(v), grad[2].eval(v));
    least = std::min(least, g.norm() / (norm * scale));
  }
  return least;
}

void deltoid(const Options& opt, SuiteResult& r) {
  const alg::QuadraticMap q = canonical_map();
  const alg::StrictTransform st = alg::strict_transform(incircle_curve(QS3::ratio(1, 12)), q);
  r.checks.push_back(equal("strict transform degree", st.curve.degree(), 4));
  int cusps = 0;
  for (const auto& v : q.fundamental)
    if (alg::multiplicity_at(st.curve, v) == 2 && alg::classify_singularity(st.curve, v) == alg::Singularity::Cusp)
      ++cusps;
  r.checks.push_back(equal("cusps at A, B, C", cusps, 3));

  // Canonical deltoid z = 2b e^{it} + b e^{-2it}: cusps at 3b, 3b w, 3b w^2.
  const double b = 1.0;
  const std::complex<double> w = std::polar(1.0, 2 * kPi / 3);
  const std::vector<std::complex<double>> cusp_src = {3 * b, 3 * b * w, 3 * b * w * w};
  const std::vector<std::complex<double>> cusp_dst = {{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}};
  const auto [alpha, beta] = fit_similarity(cusp_src, cusp_dst);
  double fit = 0;
  for (size_t i = 0; i < 3; ++i) fit = std::max(fit, std::abs(alpha * cusp_src[i] + beta - cusp_dst[i]));
  std::vector<HPoint> hypo;
  for (int k = 0; k < 720; ++k) {
    const double t = 2 * kPi * k / 720;
    const std::complex<double> z = 2 * b * std::polar(1.0, t) + b * std::polar(1.0, -2 * t);
    const std::complex<double> m = alpha * z + beta;
    hypo.push_back(HPoint::finite(m.real(), m.imag()));
  }
  r.checks.push_back(below("hypocycloid a/b = 3, similarity fit", alg::curve_eval_residual(st.curve, hypo), 1e-7,
                           "cusp fit error " + fmt("%.1e", fit) + ", rolling radius " +
                               fmt("%.6f", std::abs(alpha) * b)));

  const Figure fig = load(opt, "deltoid.geo");
  const LocusTrace trace = trace_locus(fig, "F", path_from_object(fig, "inc"), "Q", 720);
  std::vector<HPoint> samples;
  for (const auto& s : trace.samples)
    if (s.exists) samples.push_back(HPoint::finite(s.position));
  r.checks.push_back(equal("locus samples", samples.size(), 720));
  r.checks.push_back(below("720-sample locus on the quartic", alg::curve_eval_residual(st.curve, samples), 1e-7));
  const std::vector<Vec2> vertices = {{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}};
  r.checks.push_back(above("no singular point away from A, B, C", max_gradient_gap(st.curve, samples, vertices), 1e-3,
                           "least scaled gradient on the traced curve"));
}

void circumcircle(const Options&, SuiteResult& r) {
  const alg::QuadraticMap q = canonical_map();
  const Poly circ = alg::exact_circle_poly(QS3::ratio(1, 2), QS3(alg::Rat(0), alg::Rat(1, 6)), QS3::ratio(1, 3));
  const Poly x = Poly::variable(0), y = Poly::variable(1), wv = Poly::variable(2);
  const Poly d = QS3(3) * x * x + QS3(3) * y * y - QS3(3) * x * wv - QS3::sqrt3() * y * wv;
  r.checks.push_back(holds("3 * circumcircle = D (exact)", circ * QS3(3) == d));
  r.checks.push_back(holds("D is the denominator of the map", q.f[2].proportional_to(d)));
  const alg::StrictTransform st = alg::strict_transform(PlaneCurve(circ), q);
  r.checks.push_back(holds("image is the line at infinity", st.curve.poly().proportional_to(wv),
                           "strict transform degree " + std::to_string(st.curve.degree())));
}

void asymptote(const Options&, SuiteResult& r) {
  const BHConfig cfg = canonical_bh_config();
  const Circle inc = canonical_incircle();
  double worst = 0;
  int hyperbolas = 0;
  for (int k = 0; k < 20; ++k) {
    const double t = 2 * kPi * (k + 0.5) / 20;
    const HPoint p = HPoint::finite(inc.at(t));
    const HLine tangent = tangent_direction(inc, p);
    const Conic img = bh_line_image(cfg, tangent);
    const Mat3& m = img.matrix();
    const double a = m(0, 0), b = m(0, 1), c = m(1, 1);
    const double disc = b * b - a * c;
    if (disc <= 0) continue;
    ++hyperbolas;
    const double angle = std::atan2(2 * std::sqrt(disc), std::abs(a + c));
    worst = std::max(worst, std::abs(angle - kPi / 3));
  }
  r.checks.push_back(equal("images that are hyperbolas", hyperbolas, 20));
  r.checks.push_back(below("asymptote angle - pi/3 (20 tangents)", worst, 1e-6));
}

void cusp_transition(const Options&, SuiteResult& r) {
  const alg::QuadraticMap q = canonical_map();
  struct Case {
    const char* name;
    QS3 r2;
  };
  const Case cases[] = {{"r^2 = 1/16 < r_in^2", QS3::ratio(1, 16)},
                        {"r^2 = 1/12 = r_in^2", QS3::ratio(1, 12)},
                        {"r^2 = 1/10 > r_in^2", QS3::ratio(1, 10)}};
  for (int i = 0; i < 3; ++i) {
    const PlaneCurve img = alg::strict_transform(incircle_curve(cases[i].r2), q).curve;
    int ok = 0;
    std::string seen;
    for (const auto& v : q.fundamental) {
      const int m = alg::multiplicity_at(img, v);
      std::string label = "m=" + std::to_string(m);
      bool good = false;
      if (m == 2) {
        const auto kind = alg::classify_singularity(img, v);
        const int disc = alg::tangent_discriminant(img, v).sign();
        if (i == 0) {
          // Conjugate tangents: an isolated real point, no real branch.
          good = disc < 0;
          label += disc < 0 ? " isolated" : " real branch";
        } else if (i == 1) {
          good = kind == alg::Singularity::Cusp;
          label += " " + std::string(alg::to_string(kind));
        } else {
          good = kind == alg::Singularity::Node && disc > 0;
          label += " " + std::string(alg::to_string(kind)) + (disc > 0 ? " real" : " conjugate");
        }
      }
      if (seen.empty() || seen.find(label) == std::string::npos) seen += (seen.empty() ? "" : ", ") + label;
      if (good) ++ok;
    }
    const char* expect = i == 0 ? "no real branch (smooth real image)" : i == 1 ? "CUSP" : "NODE";
    r.checks.push_back(equal(std::string(cases[i].name) + ": " + expect + " at A, B, C", ok, 3, seen));
  }
}

const std::map<std::string, std::function<void(const Options&, SuiteResult&)>>& registry() {
  static const std::map<std::string, std::function<void(const Options&, SuiteResult&)>> suites = {
      {"golden-section", golden_section}, {"decagon", decagon},
      {"closure", closure},               {"toolset", toolset},
      {"inversion", inversion},           {"stereo", stereo},
      {"harmonic", harmonic},             {"radical-axis", radical_axis},
      {"conjugate", conjugate},           {"bh-closed-form", bh_closed_form},
      {"degree-law", degree_law},         {"deltoid", deltoid},
      {"circumcircle", circumcircle},     {"asymptote", asymptote},
      {"cusp-transition", cusp_transition},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "golden-section", "decagon",        "closure",    "toolset", "inversion",    "stereo",    "harmonic",
      "radical-axis",   "conjugate",      "bh-closed-form", "degree-law", "deltoid", "circumcircle", "asymptote",
      "cusp-transition"};
  return names;
}

bool has_suite(const std::string& name) { return registry().count(name) > 0; }

SuiteResult run_suite(const std::string& name, const Options& opt) {
  SuiteResult r;
  r.suite = name;
  const auto t0 = std::chrono::steady_clock::now();
  auto it = registry().find(name);
  if (it == registry().end()) {
    r.checks.push_back(holds("known suite", false, "no suite named '" + name + "'"));
    return r;
  }
  try {
    it->second(opt, r);
  } catch (const std::exception& e) {
    r.checks.push_back(holds("completed without error", false, e.what()));
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<SuiteResult> run(const std::string& name, const Options& opt) {
  std::vector<SuiteResult> out;
  if (name == "all") {
    for (const auto& n : suite_names()) out.push_back(run_suite(n, opt));
  } else {
    out.push_back(run_suite(name, opt));
  }
  return out;
}

}  // namespace geo::verify
