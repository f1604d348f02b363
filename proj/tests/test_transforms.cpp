#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "geo/transforms.hpp"

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

struct Rng {
  std::mt19937_64 gen{20190601};
  double operator()(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
};

}  // namespace

TEST(Inversion, FixedCircleAndInvolution) {
  const Circle c(1, 2, 3);
  Rng r;
  for (int k = 0; k < 1000; ++k) {
    const HPoint on = HPoint::finite(c.at(r(0, 6.28)));
    EXPECT_TRUE(same_point(invert_point(c, on), on, 1e-12));
    const HPoint p = HPoint::finite(r(-10, 10), r(-10, 10));
    EXPECT_LT((invert_point(c, invert_point(c, p)).affine() - p.affine()).norm(), 1e-9 * (1 + p.affine().norm()));
  }
}

TEST(Inversion, CenterAndInfinity) {
  const Circle c(0, 0, 2);
  EXPECT_EQ(code_of([&] { invert_point(c, HPoint::finite(0, 0)); }), ErrorCode::CenterInversion);
  EXPECT_TRUE(same_point(invert_point(c, HPoint::at_infinity(1, 2)), HPoint::finite(0, 0)));
  EXPECT_NEAR((invert_point(c, HPoint::finite(4, 0)).affine() - Vec2(1, 0)).norm(), 0, 1e-15);
}

TEST(Inversion, LineThroughCenterIsInvariant) {
  const Circle c(1, 1, 1);
  const GenCircle g = invert_gencircle(c, HLine::through(HPoint::finite(1, 1), HPoint::finite(3, 2)));
  ASSERT_TRUE(std::holds_alternative<HLine>(g));
  EXPECT_TRUE(same_line(std::get<HLine>(g), HLine::through(HPoint::finite(1, 1), HPoint::finite(3, 2))));
}

TEST(Inversion, CircleThroughCenterBecomesLine) {
  const Circle inv(0, 0, 1);
  const GenCircle g = invert_gencircle(inv, Circle(1, 0, 1));
  ASSERT_TRUE(std::holds_alternative<HLine>(g));
  EXPECT_TRUE(same_line(std::get<HLine>(g), HLine(1, 0, -0.5)));
}

TEST(Inversion, GenericCircleImageMatchesPointwise) {
  const Circle inv(0.3, -0.2, 1.7);
  const Circle c(2, 1, 0.6);
  const GenCircle g = invert_gencircle(inv, c);
  ASSERT_TRUE(std::holds_alternative<Circle>(g));
  const Circle& img = std::get<Circle>(g);
  for (double a = 0; a < 6.28; a += 0.5) {
    const Vec2 q = invert_point(inv, HPoint::finite(c.at(a))).affine();
    EXPECT_NEAR((q - img.center()).norm(), img.radius(), 1e-12);
  }
}

TEST(Stereo, PoleThrowsAndRoundTrip) {
  EXPECT_EQ(code_of([] { stereo_project(StereoPole::North, SpherePoint(0, 0, 1)); }), ErrorCode::PoleProjection);
  Rng r;
  for (int k = 0; k < 200; ++k) {
    const HPoint p = HPoint::finite(r(-5, 5), r(-5, 5));
    for (auto pole : {StereoPole::North, StereoPole::South}) {
      const SpherePoint s = stereo_lift(pole, p);
      EXPECT_NEAR(s.vec().norm(), 1.0, 1e-14);
      EXPECT_LT((stereo_project(pole, s).affine() - p.affine()).norm(), 1e-12);
    }
  }
}

TEST(Stereo, CompositionIsUnitInversion) {
  Rng r;
  const Circle unit(0, 0, 1);
  for (int k = 0; k < 1000; ++k) {
    const HPoint p = HPoint::finite(r(-4, 4), r(-4, 4));
    EXPECT_LT((ns_composition(p).affine() - invert_point(unit, p).affine()).norm(), 1e-10);
  }
}

TEST(CentralProjection, ParallelRayIsAtInfinity) {
  const Plane src{{0, 0, 1}, 0}, dst{{0, 1, 0}, 1};
  const Eigen::Vector3d o(0, 0, 1);
  const Eigen::Vector4d at = central_project(o, src, dst, {2, 0, 0});
  EXPECT_NEAR(at.w(), 0, 1e-15);
  const Eigen::Vector4d q = central_project(o, src, dst, {0, 2, 0});
  EXPECT_NEAR(q.head<3>().y() / q.w(), 1.0, 1e-14);
  EXPECT_EQ(code_of([&] { central_project({0, 0, 0}, src, dst, {1, 0, 0}); }), ErrorCode::DegenerateInput);
}

TEST(PolePolar, AreInverse) {
  const Conic e = Conic::from_coefficients(1, 0.3, 2, -0.5, 0.1, -3);
  Rng r;
  for (int k = 0; k < 100; ++k) {
    const HPoint p = HPoint::finite(r(-4, 4), r(-4, 4));
    EXPECT_TRUE(same_point(pole(e, polar(e, p)), p, 1e-9));
  }
  EXPECT_TRUE(same_line(polar(Circle(0, 0, 1).to_conic(), HPoint::finite(2, 0)), HLine(1, 0, -0.5)));
  EXPECT_EQ(code_of([] { polar(Conic::line_pair(HLine(1, 0, 0), HLine(0, 1, 0)), HPoint::finite(1, 1)); }),
            ErrorCode::SingularConic);
}

TEST(Harmonic, ConjugateGivesMinusOne) {
  Rng r;
  for (int k = 0; k < 300; ++k) {
    const Vec2 a(r(-3, 3), r(-3, 3)), d(r(-1, 1), r(-1, 1));
    const HPoint A = HPoint::finite(a), B = HPoint::finite(a + d), C = HPoint::finite(a + r(-2, 3) * d);
    if (same_point(C, A, 1e-3) || same_point(C, B, 1e-3) || same_point(C, midpoint(A, B), 1e-3)) continue;
    EXPECT_NEAR(cross_ratio(A, B, C, harmonic_conjugate(A, B, C)), -1.0, 1e-8);
  }
  EXPECT_TRUE(harmonic_conjugate(HPoint::finite(-1, 0), HPoint::finite(1, 0), HPoint::finite(0, 0)).is_infinite());
}

TEST(ConjugateConic, UnitCircleGivesRectangularHyperbola) {
  const Conic h = conjugate_conic(Circle(0, 0, 1).to_conic(), Vec2(0, 1));
  EXPECT_LT(conic_distance(h, Conic::from_coefficients(1, 0, -1, 0, 0, -1)), 1e-12);
  EXPECT_EQ(code_of([] { conjugate_conic(Conic::from_coefficients(0, 0, 1, -1, 0, 0), Vec2(1, 0)); }),
            ErrorCode::NoCenter);
}

TEST(IdealChord, EndpointsOnConjugate) {
  const Conic c = Circle(0, 0, 1).to_conic();
  const auto [u, v] = ideal_chord(c, HLine(1, 0, -2));  // x = 2
  EXPECT_NEAR(u.affine().x(), 2, 1e-12);
  EXPECT_NEAR(std::abs(u.affine().y()), std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(u.affine().y(), -v.affine().y(), 1e-12);
  EXPECT_EQ(code_of([&] { ideal_chord(c, HLine(1, 0, -0.5)); }), ErrorCode::RealSecant);
}

TEST(RadicalAxis, EquationDifferenceAndErrors) {
  const HLine l = ideal_common_secant(Circle(0, 0, 1), Circle(3, 0, 1));
  EXPECT_TRUE(same_line(l, HLine(1, 0, -1.5)));
  EXPECT_EQ(code_of([] { ideal_common_secant(Circle(1, 1, 1), Circle(1, 1, 2)); }), ErrorCode::ConcentricCircles);
  // Real secant of intersecting circles.
  const Circle a(0, 0, 1), b(1, 0.5, 1);
  const HLine s = ideal_common_secant(a, b);
  for (const auto& i : intersect(a, b)) EXPECT_TRUE(incident(i.point, s));
}

TEST(Organic, ProjectivityTracesConic) {
  Projectivity sigma{HPoint::finite(0, 0), HPoint::finite(3, 1), Eigen::Matrix2d{{1, 2}, {0.5, -1}}};
  const OrganicConic oc = organic_conic(sigma);
  ASSERT_FALSE(oc.degenerate);
  EXPECT_NEAR(oc.conic.eval(sigma.source), 0, 1e-9);
  EXPECT_NEAR(oc.conic.eval(sigma.target), 0, 1e-9);
  for (double t = -2; t <= 2; t += 0.25) {
    const auto p = organic_point(sigma, Vec2(std::cos(t), std::sin(t)));
    if (p) {
      EXPECT_NEAR(oc.conic.eval(*p), 0, 1e-8);
    }
  }
}

TEST(Organic, CoincidentVerticesThrow) {
  Projectivity sigma{HPoint::finite(1, 1), HPoint::finite(1, 1), Eigen::Matrix2d::Identity()};
  EXPECT_EQ(code_of([&] { organic_conic(sigma); }), ErrorCode::DegenerateProjectivity);
}

TEST(BH, CanonicalConfiguration) {
  const BHConfig cfg = canonical_bh_config();
  ASSERT_TRUE(cfg.has_real_base());
  EXPECT_TRUE(same_point(cfg.pole, HPoint::finite(0, 0)));
  EXPECT_TRUE(same_point(*cfg.base_b, HPoint::finite(1, 0)));
  EXPECT_TRUE(same_point(*cfg.base_c, HPoint::finite(0.5, std::sqrt(3) / 2)));
  const HPoint g = HPoint::finite(0.5, std::sqrt(3) / 6);
  EXPECT_TRUE(same_point(bh_invert(cfg, g), g, 1e-12));
  EXPECT_EQ(code_of([&] { bh_invert(cfg, cfg.pole); }), ErrorCode::FundamentalPoint);
  EXPECT_EQ(code_of([&] { bh_invert(cfg, *cfg.base_b); }), ErrorCode::FundamentalPoint);
}

TEST(BH, IsAnInvolution) {
  const BHConfig cfg = canonical_bh_config();
  Rng r;
  for (int k = 0; k < 300; ++k) {
    const HPoint p = HPoint::finite(r(-2, 2), r(-2, 2));
    HPoint q = p;
    try {
      q = bh_invert(cfg, bh_invert(cfg, p));
    } catch (const GeoError&) {
      continue;
    }
    EXPECT_TRUE(same_point(q, p, 1e-7));
  }
}

TEST(BH, LineImageContainsPointImages) {
  const BHConfig cfg = canonical_bh_config();
  const HLine l(1, 2, -0.7);
  const Conic img = bh_line_image(cfg, l);
  for (double t = -3; t <= 3; t += 0.5) {
    const HPoint q = bh_invert(cfg, HPoint::finite(l.at(t)));
    EXPECT_NEAR(img.eval(q), 0, 1e-9);
  }
}

TEST(BH, ComplexBasePointsRejected) {
  // Pole inside the unit circle: its polar misses the circle.
  const BHConfig cfg = make_bh_config(Circle(0, 0, 1).to_conic(), HPoint::finite(0.2, 0));
  EXPECT_FALSE(cfg.has_real_base());
  EXPECT_EQ(code_of([&] { (void)cfg.fundamental(Fundamental::B); }), ErrorCode::ComplexBasePoints);
  EXPECT_EQ(code_of([] { make_bh_config(Circle(0, 0, 1).to_conic(), HPoint::finite(1, 0)); }),
            ErrorCode::DegenerateInput);
}

TEST(BH, BlowupLimitLiesOnOppositeLine) {
  const BHConfig cfg = canonical_bh_config();
  // Approaching A along a direction: the limit lies on BC.
  const HLine approach = HLine::through(cfg.pole, HPoint::finite(1, 1));
  const HPoint lim = bh_blowup_limit(cfg, Fundamental::A, approach);
  EXPECT_TRUE(incident(lim, HLine::through(*cfg.base_b, *cfg.base_c), 1e-9));
  EXPECT_EQ(code_of([&] { bh_blowup_limit(cfg, Fundamental::A, HLine::through(cfg.pole, *cfg.base_b)); }),
            ErrorCode::ExceptionalApproach);
}

TEST(BH, Incircle) {
  const Circle c = canonical_incircle();
  EXPECT_NEAR((c.center() - Vec2(0.5, std::sqrt(3) / 6)).norm(), 0, 1e-15);
  EXPECT_NEAR(c.radius() * c.radius(), 1.0 / 12, 1e-15);
}
