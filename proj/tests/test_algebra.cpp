#include <gtest/gtest.h>

#include <random>

#include "geo/curves.hpp"
#include "geo/transforms.hpp"

using namespace geo;
using namespace geo::alg;

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

const Poly X = Poly::variable(0), Y = Poly::variable(1), W = Poly::variable(2);

QS3 q(long n, long d = 1) { return QS3::ratio(n, d); }

}  // namespace

TEST(QS3, FieldArithmetic) {
  const QS3 s = QS3::sqrt3();
  EXPECT_EQ(s * s, QS3(3));
  const QS3 x(Rat(2, 3), Rat(-1, 5));
  EXPECT_EQ(x * x.inverse(), QS3(1));
  EXPECT_EQ((x + s) - s, x);
  EXPECT_EQ(x.norm(), Rat(4, 9) - 3 * Rat(1, 25));
  EXPECT_EQ(QS3::parse(x.to_string()), x);
  EXPECT_EQ(QS3::parse("1/2+3/4*s3"), QS3(Rat(1, 2), Rat(3, 4)));
}

TEST(QS3, ExactSign) {
  // 1732/1000 < sqrt 3 < 1733/1000
  EXPECT_EQ((QS3::sqrt3() - q(1732, 1000)).sign(), 1);
  EXPECT_EQ((QS3::sqrt3() - q(1733, 1000)).sign(), -1);
  EXPECT_EQ(QS3().sign(), 0);
  // 7 - 4 sqrt 3 is tiny but positive.
  EXPECT_EQ(QS3(Rat(7), Rat(-4)).sign(), 1);
  EXPECT_LT(QS3(Rat(7), Rat(-4)), q(1, 10));
}

TEST(QS3, RandomRingAxioms) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-9, 9), den(1, 7);
  auto r = [&] { return QS3(Rat(d(rng), den(rng)), Rat(d(rng), den(rng))); };
  for (int k = 0; k < 300; ++k) {
    const QS3 a = r(), b = r(), c = r();
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    if (!b.is_zero()) {
      EXPECT_EQ(a / b * b, a);
    }
    EXPECT_NEAR((a * b).to_double(), a.to_double() * b.to_double(), 1e-9);
  }
}

TEST(Poly, ArithmeticAndDegree) {
  const Poly p = X * X + Y * W * q(3) - W * W;
  EXPECT_EQ(p.degree(), 2);
  EXPECT_TRUE(p.is_homogeneous());
  EXPECT_FALSE((p + X).is_homogeneous());
  EXPECT_EQ(p.coeff({0, 1, 1}), q(3));
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ(Poly().degree(), -1);
  EXPECT_EQ((X + Y).pow(3).coeff({1, 2, 0}), q(3));
}

TEST(Poly, DerivativeEvalCompose) {
  const Poly p = X * X * Y - W * W * W * q(2);
  EXPECT_EQ(p.derivative(0), q(2) * X * Y);
  EXPECT_EQ(p.derivative(2), q(-6) * W * W);
  const ExactPoint pt = {q(1), QS3::sqrt3(), q(1)};
  EXPECT_EQ(p.eval(pt), QS3::sqrt3() - q(2));
  EXPECT_NEAR(p.eval(Eigen::Vector3d(1, std::sqrt(3), 1)), std::sqrt(3) - 2, 1e-15);
  EXPECT_EQ(p.compose({Y, X, W}), Y * Y * X - W * W * W * q(2));
}

TEST(Poly, ExactLinearDivision) {
  const Poly l = Poly::linear(q(1), QS3::sqrt3(), q(-1));
  const Poly g = X * X - Y * W;
  const auto quotient = (l * l * g).divide_exact_linear(l);
  ASSERT_TRUE(quotient.has_value());
  EXPECT_EQ(*quotient, l * g);
  EXPECT_FALSE(g.divide_exact_linear(l).has_value());
}

TEST(Poly, TextRoundTripAndProportionality) {
  const Poly p = q(1, 3) * X * X * Y + QS3(Rat(2), Rat(-1, 2)) * W * W * W - Y * Y * W;
  EXPECT_EQ(Poly::from_text(p.to_text()), p);
  EXPECT_TRUE(p.proportional_to(p * QS3(Rat(3), Rat(5))));
  EXPECT_FALSE(p.proportional_to(p + X * X * X));
  EXPECT_EQ(p.monic().leading_coefficient(), q(1));
}

TEST(Curves, CircumcircleIsDenominator) {
  const QuadraticMap m = bh_map_polys(canonical_exact_config());
  const QS3 s3 = QS3::sqrt3();
  const Poly circ = exact_circle_poly(q(1, 2), s3 / q(6), q(1, 3));
  const Poly d = q(3) * X * X + q(3) * Y * Y - q(3) * X * W - s3 * Y * W;
  EXPECT_EQ(q(3) * circ, d);
  const StrictTransform st = strict_transform(PlaneCurve(circ), m);
  EXPECT_EQ(st.curve.degree(), 1);
  EXPECT_TRUE(st.curve.poly().proportional_to(W));
}

TEST(Curves, MapVanishesAtFundamentalPoints) {
  const QuadraticMap m = bh_map_polys(canonical_exact_config());
  for (const auto& p : m.fundamental)
    for (const auto& f : m.f) EXPECT_TRUE(f.eval(p).is_zero());
  EXPECT_EQ(m.lines[0].contracted_to, 'A');
  EXPECT_EQ(m.lines[1].contracted_to, 'B');
  EXPECT_EQ(m.lines[2].contracted_to, 'C');
}

TEST(Curves, MultiplicityAndSingularities) {
  // Cuspidal cubic y^2 w = x^3 at the origin, nodal cubic y^2 w = x^2 (x + w).
  const ExactPoint o = exact_point(q(0), q(0));
  const PlaneCurve cusp(Y * Y * W - X * X * X);
  const PlaneCurve node(Y * Y * W - X * X * (X + W));
  EXPECT_EQ(multiplicity_at(cusp, o), 2);
  EXPECT_EQ(multiplicity_at(node, o), 2);
  EXPECT_EQ(multiplicity_at(node, exact_point(q(5), q(7))), 0);
  EXPECT_EQ(classify_singularity(cusp, o), Singularity::Cusp);
  EXPECT_EQ(classify_singularity(node, o), Singularity::Node);
  EXPECT_GT(tangent_discriminant(node, o).sign(), 0);
  const PlaneCurve acnode(Y * Y * W + X * X * (X + W));
  EXPECT_LT(tangent_discriminant(acnode, o).sign(), 0);
  EXPECT_EQ(code_of([&] { tangent_discriminant(PlaneCurve(Y * W - X * X), o); }), ErrorCode::WrongMultiplicity);
}

TEST(Curves, TextFormatRoundTrip) {
  const PlaneCurve c(q(2) * X * X * Y + QS3::sqrt3() * W * W * W);
  EXPECT_EQ(PlaneCurve::from_text(c.to_text()), c);
  EXPECT_EQ(c.poly().leading_coefficient(), q(1));
}

TEST(Curves, IncircleGoesToDeltoid) {
  const QuadraticMap m = bh_map_polys(canonical_exact_config());
  const QS3 s3 = QS3::sqrt3();
  const PlaneCurve inc(exact_circle_poly(q(1, 2), s3 / q(6), q(1, 12)));
  const StrictTransform st = strict_transform(inc, m);
  EXPECT_EQ(st.curve.degree(), 4);
  for (const auto& p : m.fundamental) {
    EXPECT_EQ(multiplicity_at(st.curve, p), 2);
    EXPECT_EQ(classify_singularity(st.curve, p), Singularity::Cusp);
  }
}

TEST(Curves, StrictTransformIsInvolution) {
  const QuadraticMap m = bh_map_polys(canonical_exact_config());
  const std::vector<Poly> forbidden = {m.lines[0].form, m.lines[1].form, m.lines[2].form};
  std::mt19937_64 rng(20190601);
  for (int n = 1; n <= 3; ++n) {
    const std::array<int, 3> t = {0, 0, 0};
    const auto c = curve_with_multiplicities(n, m.fundamental, t, forbidden, rng);
    ASSERT_TRUE(c.has_value());
    const StrictTransform once = strict_transform(*c, m);
    EXPECT_EQ(once.curve.degree(), 2 * n);
    const StrictTransform twice = strict_transform(once.curve, m);
    EXPECT_TRUE(twice.curve.poly().proportional_to(c->poly())) << "n=" << n;
  }
}

TEST(Curves, DegreeLawSmallGrid) {
  const QuadraticMap m = bh_map_polys(canonical_exact_config());
  const std::vector<Poly> forbidden = {m.lines[0].form, m.lines[1].form, m.lines[2].form};
  std::mt19937_64 rng(5);
  for (int n = 2; n <= 3; ++n) {
    for (int ta = 0; ta <= 1; ++ta) {
      const std::array<int, 3> t = {ta, 1, 0};
      if (t[0] + t[1] > n) continue;
      const auto c = curve_with_multiplicities(n, m.fundamental, t, forbidden, rng);
      ASSERT_TRUE(c.has_value());
      const StrictTransform st = strict_transform(*c, m);
      EXPECT_EQ(st.curve.degree(), 2 * n - t[0] - t[1] - t[2]);
      for (const auto& e : st.exceptional) EXPECT_EQ(e.exponent, t[e.line.contracted_to - 'A']);
    }
  }
}

TEST(Curves, PushforwardMatchesPointwise) {
  const QuadraticMap m = bh_map_polys(canonical_exact_config());
  const BHConfig cfg = canonical_bh_config();
  // Conic through no fundamental point: x^2 + 2 y^2 - w^2 = 0.
  const PlaneCurve c(X * X + q(2) * Y * Y - W * W);
  const StrictTransform st = strict_transform(c, m);
  std::vector<HPoint> images;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0, 6.283);
  for (int k = 0; k < 100; ++k) {
    const double a = u(rng);
    images.push_back(bh_invert(cfg, HPoint::finite(std::cos(a), std::sin(a) / std::sqrt(2.0))));
  }
  EXPECT_LT(curve_eval_residual(st.curve, images), 1e-8);
}

TEST(Curves, FundamentalComponentRejected) {
  const QuadraticMap m = bh_map_polys(canonical_exact_config());
  EXPECT_EQ(code_of([&] { strict_transform(PlaneCurve(m.lines[0].form), m); }), ErrorCode::FundamentalComponent);
}
