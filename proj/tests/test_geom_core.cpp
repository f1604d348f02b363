#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "geo/core.hpp"

using namespace geo;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const GeoError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no GeoError thrown";
  return ErrorCode::Unsupported;
}

Vec2 aff(const Intersection& i) { return i.point.affine(); }

}  // namespace

TEST(HPoint, NormalizationMakesScaledPointsEqual) {
  const HPoint p(2, 4, 2), q(-1, -2, -1);
  EXPECT_TRUE(same_point(p, q));
  EXPECT_DOUBLE_EQ(p.vec().cwiseAbs().maxCoeff(), 1.0);
  EXPECT_EQ(p.vec(), q.vec());
  EXPECT_TRUE(HPoint::at_infinity(1, 1).is_infinite());
  EXPECT_NEAR((p.affine() - Vec2(1, 2)).norm(), 0, 1e-15);
}

TEST(HPoint, RejectsZeroAndNonFinite) {
  EXPECT_EQ(code_of([] { HPoint(0, 0, 0); }), ErrorCode::DegenerateInput);
  EXPECT_EQ(code_of([] { HPoint(NAN, 0, 1); }), ErrorCode::DegenerateInput);
  EXPECT_EQ(code_of([] { (void)HPoint::at_infinity(1, 0).affine(); }), ErrorCode::DegenerateInput);
}

TEST(HLine, ThroughAndParametrization) {
  const HLine l = HLine::through(HPoint::finite(0, 1), HPoint::finite(2, 1));
  EXPECT_TRUE(incident(HPoint::finite(-5, 1), l));
  EXPECT_NEAR(std::abs(l.direction().x()), 1.0, 1e-15);
  EXPECT_NEAR((l.foot() - Vec2(0, 1)).norm(), 0, 1e-15);
  EXPECT_NEAR(l.parameter_of(l.at(3.25)), 3.25, 1e-14);
  EXPECT_EQ(code_of([] { HLine::through(HPoint::finite(1, 1), HPoint(2, 2, 2)); }), ErrorCode::CoincidentObjects);
  EXPECT_TRUE(HLine::at_infinity().is_at_infinity());
  EXPECT_EQ(code_of([] { (void)HLine::at_infinity().direction(); }), ErrorCode::LineAtInfinity);
}

TEST(Intersect, LineLine) {
  const HLine l(1, -1, 0), m(1, 1, -2);
  const auto r = intersect(l, m);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR((aff(r[0]) - Vec2(1, 1)).norm(), 0, 1e-15);
}

TEST(Intersect, ParallelLinesMeetAtInfinity) {
  const auto r = intersect(HLine(0, 1, 0), HLine(0, 1, -3));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_TRUE(r[0].point.is_infinite());
  EXPECT_TRUE(same_point(r[0].point, HPoint::at_infinity(1, 0)));
}

TEST(Intersect, CoincidentLinesThrow) {
  EXPECT_EQ(code_of([] { intersect(HLine(1, 2, 3), HLine(2, 4, 6)); }), ErrorCode::CoincidentObjects);
}

TEST(Intersect, LineCircleOrderedAlongLine) {
  const Circle c(0, 0, 1);
  const HLine l(0, 1, 0);  // y = 0
  const auto r = intersect(l, c);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_LT(l.parameter_of(aff(r[0])), l.parameter_of(aff(r[1])));
  EXPECT_NEAR(std::abs(aff(r[0]).x()), 1.0, 1e-15);
  EXPECT_NEAR(aff(r[0]).x(), -aff(r[1]).x(), 1e-15);
}

TEST(Intersect, TangentLineReportsOnePoint) {
  const auto r = intersect(HLine(0, 1, -1), Circle(0, 0, 1));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_TRUE(r[0].tangent);
  EXPECT_NEAR((aff(r[0]) - Vec2(0, 1)).norm(), 0, 1e-8);
}

TEST(Intersect, MissingLineIsEmpty) { EXPECT_TRUE(intersect(HLine(0, 1, -2), Circle(0, 0, 1)).empty()); }

TEST(Intersect, CircleCircleCounterclockwiseOnFirst) {
  const Circle a(0, 0, 1), b(1, 0, 1);
  const auto r = intersect(a, b);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_LT(a.angle_of(aff(r[0])), a.angle_of(aff(r[1])));
  EXPECT_NEAR((aff(r[0]) - Vec2(0.5, std::sqrt(3) / 2)).norm(), 0, 1e-14);
  EXPECT_NEAR((aff(r[1]) - Vec2(0.5, -std::sqrt(3) / 2)).norm(), 0, 1e-14);
}

TEST(Intersect, IdenticalCirclesThrow) {
  EXPECT_EQ(code_of([] { intersect(Circle(1, 1, 2), Circle(1, 1, 2)); }), ErrorCode::CoincidentObjects);
}

TEST(Intersect, ConcentricCirclesAreEmpty) { EXPECT_TRUE(intersect(Circle(0, 0, 1), Circle(0, 0, 2)).empty()); }

TEST(Intersect, LineConicHyperbola) {
  const Conic h = Conic::from_coefficients(1, 0, -1, 0, 0, -1);
  const auto r = intersect(HLine(1, 0, -2), h);  // x = 2
  ASSERT_EQ(r.size(), 2u);
  for (const auto& i : r) EXPECT_NEAR(std::abs(aff(i).y()), std::sqrt(3.0), 1e-12);
}

TEST(Intersect, AsymptoteMeetsHyperbolaOnceFinitely) {
  const Conic h = Conic::from_coefficients(1, 0, -1, 0, 0, -1);
  const auto r = intersect(HLine(1, -1, 0), h);
  for (const auto& i : r) EXPECT_TRUE(i.point.is_infinite() || std::abs(h.eval(i.point)) < 1e-9);
}

TEST(Intersect, CircleWithGeneralConicUnsupported) {
  const Conic e = Conic::from_coefficients(1, 0, 4, 0, 0, -4);
  EXPECT_EQ(code_of([&] { intersect(Circle(0, 0, 1), e); }), ErrorCode::Unsupported);
}

TEST(Intersect, RandomCircleCirclePointsLieOnBoth) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3, 3), r(0.2, 3);
  int hits = 0;
  for (int k = 0; k < 500; ++k) {
    const Circle a(u(rng), u(rng), r(rng)), b(u(rng), u(rng), r(rng));
    for (const auto& i : intersect(a, b)) {
      const Vec2 p = aff(i);
      EXPECT_NEAR((p - a.center()).norm(), a.radius(), 1e-8);
      EXPECT_NEAR((p - b.center()).norm(), b.radius(), 1e-8);
      ++hits;
    }
  }
  EXPECT_GT(hits, 100);
}

TEST(CrossRatio, Values) {
  auto P = [](double x) { return HPoint::finite(x, 2 * x + 1); };
  EXPECT_NEAR(cross_ratio(P(0), P(2), P(1), P(3)), (1.0 * 1) / ((-1.0) * 3), 1e-14);
  EXPECT_NEAR(cross_ratio(P(-1), P(1), P(0.5), P(2)), -1.0, 1e-14);
}

TEST(CrossRatio, Errors) {
  EXPECT_EQ(code_of([] {
              cross_ratio(HPoint::finite(0, 0), HPoint::finite(1, 0), HPoint::finite(2, 0), HPoint::finite(3, 1));
            }),
            ErrorCode::NotCollinear);
  const HPoint o = HPoint::finite(1, 1);
  EXPECT_EQ(code_of([&] { cross_ratio(o, o, o, o); }), ErrorCode::DegenerateQuadruple);
}

TEST(CrossRatio, ProjectiveInvariance) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 200; ++k) {
    Mat3 h;
    for (int i = 0; i < 9; ++i) h(i / 3, i % 3) = u(rng);
    if (std::abs(h.determinant()) < 0.1) continue;
    std::array<HPoint, 4> p = {HPoint::finite(0, 1), HPoint::finite(1, 2), HPoint::finite(2.5, 3.5),
                               HPoint::finite(-1, 0)};
    std::array<HPoint, 4> q = {HPoint(h * p[0].vec()), HPoint(h * p[1].vec()), HPoint(h * p[2].vec()),
                               HPoint(h * p[3].vec())};
    EXPECT_NEAR(cross_ratio(p[0], p[1], p[2], p[3]), cross_ratio(q[0], q[1], q[2], q[3]), 1e-7);
  }
}

TEST(ConicThrough, RecoversCircle) {
  const Circle c(1, -1, 2);
  std::array<HPoint, 5> pts = {HPoint::finite(c.at(0.1)), HPoint::finite(c.at(1.3)), HPoint::finite(c.at(2.2)),
                               HPoint::finite(c.at(3.9)), HPoint::finite(c.at(5.0))};
  const Conic k = conic_through(pts);
  EXPECT_LT(conic_distance(k, c.to_conic()), 1e-10);
}

TEST(ConicThrough, FourCollinearThrows) {
  std::array<HPoint, 5> pts = {HPoint::finite(0, 0), HPoint::finite(1, 0), HPoint::finite(2, 0), HPoint::finite(3, 0),
                               HPoint::finite(0, 1)};
  EXPECT_EQ(code_of([&] { conic_through(pts); }), ErrorCode::DegenerateInput);
}

TEST(Conic, RankAndLinePair) {
  EXPECT_EQ(Circle(0, 0, 1).to_conic().rank(), 3);
  EXPECT_TRUE(Conic::line_pair(HLine(1, 0, 0), HLine(0, 1, 0)).is_degenerate());
}

TEST(Tangent, CircleAndConic) {
  const Circle c(0, 0, 2);
  const HLine t = tangent_direction(c, HPoint::finite(0, 2));
  EXPECT_TRUE(same_line(t, HLine(0, 1, -2)));
  EXPECT_EQ(code_of([&] { tangent_direction(c, HPoint::finite(0, 1)); }), ErrorCode::NotOnCurve);
  const HLine tc = tangent_direction(c.to_conic(), HPoint::finite(2, 0));
  EXPECT_TRUE(same_line(tc, HLine(1, 0, -2)));
}

TEST(Elementary, ParallelPerpendicularMidpointAngle) {
  const HLine l(1, -1, 0);
  const HPoint p = HPoint::finite(0, 3);
  const HLine par = parallel_through(l, p), per = perpendicular_through(l, p);
  EXPECT_TRUE(incident(p, par));
  EXPECT_TRUE(incident(p, per));
  EXPECT_NEAR(angle_between(l, par), 0, 1e-15);
  EXPECT_NEAR(angle_between(l, per), std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR((midpoint(HPoint::finite(0, 0), HPoint::finite(2, 4)).affine() - Vec2(1, 2)).norm(), 0, 1e-15);
  EXPECT_EQ(code_of([&] { parallel_through(HLine::at_infinity(), p); }), ErrorCode::LineAtInfinity);
  EXPECT_TRUE(collinear(HPoint::finite(0, 0), HPoint::finite(1, 1), HPoint::finite(5, 5)));
  EXPECT_FALSE(collinear(HPoint::finite(0, 0), HPoint::finite(1, 1), HPoint::finite(5, 4)));
}

TEST(Circle, AngleParametrizationRoundTrip) {
  const Circle c(2, 3, 0.5);
  for (double a = 0; a < 6.28; a += 0.37) EXPECT_NEAR(c.angle_of(c.at(a)), a, 1e-13);
  EXPECT_EQ(code_of([] { Circle(0, 0, 0); }), ErrorCode::DegenerateInput);
  EXPECT_EQ(code_of([] { Circle(0, 0, -1); }), ErrorCode::DegenerateInput);
}
