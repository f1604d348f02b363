#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "geo/construction.hpp"
#include "geo/dsl.hpp"

using namespace geo;
using namespace geo::cons;

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

Vec2 pt(const Scene& s, const ObjectId& id) { return std::get<HPoint>(s.at(id).value).affine(); }

const char* kEuclid = R"(toolset POSTULATES_ONLY
point A = free_point(0, 0)
point B = free_point(1, 0)
circle cA = circle_center_point(A, B)
circle cB = circle_center_point(B, A)
point C = intersect(cA, cB, branch=0)
)";

Step tool(ObjectId out, ToolId t, std::vector<ObjectId> in, std::vector<double> params = {}) {
  return Step{{std::move(out)}, t, std::move(in), std::move(params)};
}

}  // namespace

TEST(Figure, AddStepChecksInputs) {
  Figure f;
  f.add_step(tool("A", ToolId::FreePoint, {}, {0, 0}));
  f.add_step(tool("B", ToolId::FreePoint, {}, {1, 0}));
  EXPECT_EQ(f.check_step(tool("A", ToolId::FreePoint, {}, {2, 2}))->code, StepIssue::Code::DuplicateId);
  EXPECT_EQ(f.check_step(tool("l", ToolId::LineThrough, {"A", "Z"}))->code, StepIssue::Code::UndefinedIdentifier);
  EXPECT_EQ(f.check_step(tool("l", ToolId::LineThrough, {"A"}))->code, StepIssue::Code::Arity);
  f.add_step(tool("c", ToolId::CircleCenterPoint, {"A", "B"}));
  const auto tm = f.check_step(tool("m", ToolId::Midpoint, {"A", "c"}));
  ASSERT_TRUE(tm);
  EXPECT_EQ(tm->code, StepIssue::Code::TypeMismatch);
  EXPECT_EQ(tm->input, 1u);
  EXPECT_EQ(f.check_step(tool("r", ToolId::CircleCenterRadius, {"A"}, {-1}))->code, StepIssue::Code::BadParam);
  EXPECT_EQ(code_of([&] { f.add_step(tool("A", ToolId::FreePoint, {}, {2, 2})); }), ErrorCode::MalformedFigure);
  EXPECT_EQ(f.kind_of("c"), Kind::Circle);
  EXPECT_FALSE(f.kind_of("nope"));
}

TEST(Evaluate, EuclidI1IsEquilateral) {
  const Scene s = evaluate(dsl::parse_or_throw(kEuclid));
  EXPECT_TRUE(s.all_exist());
  const Vec2 a = pt(s, "A"), b = pt(s, "B"), c = pt(s, "C");
  EXPECT_NEAR((a - c).norm(), 1.0, 1e-15);
  EXPECT_NEAR((b - c).norm(), 1.0, 1e-15);
  EXPECT_GT(c.y(), 0);
  EXPECT_TRUE(s.at("A").draggable);
  EXPECT_FALSE(s.at("C").draggable);
}

TEST(Evaluate, IsDeterministic) {
  const Figure f = dsl::parse_or_throw(kEuclid);
  EXPECT_TRUE(evaluate(f) == evaluate(f));
}

TEST(Evaluate, NonexistencePropagates) {
  const Figure f = dsl::parse_or_throw(R"(toolset FULL
point A = free_point(0, 0)
point B = free_point(1, 0)
point D = free_point(5, 0)
point E = free_point(5, 1)
circle cA = circle_center_point(A, B)
circle cD = circle_center_point(D, E)
point X = intersect(cA, cD, branch=0)
line l = line_through(A, X)
point Y = free_point(3, 3)
)");
  const Scene s = evaluate(f);
  EXPECT_FALSE(s.at("X").exists);
  EXPECT_FALSE(s.at("l").exists);
  EXPECT_TRUE(s.at("Y").exists);
  EXPECT_FALSE(s.all_exist());
}

TEST(Drag, TriangleFollowsAndStaysEquilateral) {
  Figure f = dsl::parse_or_throw(kEuclid);
  BranchState st;
  evaluate(f, {}, &st);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int k = 0; k < 50; ++k) {
    DragResult r = drag(f, st, "B", Vec2(u(rng), u(rng)));
    const Vec2 a = pt(r.scene, "A"), b = pt(r.scene, "B"), c = pt(r.scene, "C");
    EXPECT_NEAR((a - c).norm(), (a - b).norm(), 1e-12);
    EXPECT_NEAR((b - c).norm(), (a - b).norm(), 1e-12);
    f = std::move(r.figure);
    st = std::move(r.state);
  }
}

TEST(Drag, RejectsDerivedPoints) {
  const Figure f = dsl::parse_or_throw(kEuclid);
  EXPECT_EQ(code_of([&] { drag(f, {}, "C", Vec2(1, 1)); }), ErrorCode::NotDraggable);
  EXPECT_EQ(code_of([&] { drag(f, {}, "cA", Vec2(1, 1)); }), ErrorCode::NotDraggable);
}

TEST(Drag, PointOnCircleIsProjected) {
  const Figure f = dsl::parse_or_throw(R"(toolset FULL
point O = free_point(0, 0)
point T = free_point(2, 0)
circle c = circle_center_point(O, T)
point P = point_on(c, 0.5)
)");
  const DragResult r = drag(f, {}, "P", Vec2(0, 5));
  EXPECT_NEAR((pt(r.scene, "P") - Vec2(0, 2)).norm(), 0, 1e-12);
}

TEST(Drag, BranchContinuityAcrossSymmetricPosition) {
  // C follows the same side while B passes over A's vertical.
  Figure f = dsl::parse_or_throw(kEuclid);
  BranchState st;
  evaluate(f, {}, &st);
  double side = 0;
  for (int k = 0; k <= 40; ++k) {
    const double ang = 0.05 * k;
    DragResult r = drag(f, st, "B", Vec2(std::cos(ang), std::sin(ang)));
    const Vec2 a = pt(r.scene, "A"), b = pt(r.scene, "B"), c = pt(r.scene, "C");
    const double cr = (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
    if (k == 0) side = cr;
    EXPECT_GT(cr * side, 0) << "step " << k;
    f = std::move(r.figure);
    st = std::move(r.state);
  }
}

TEST(Toolset, Violations) {
  EXPECT_TRUE(check_toolset(dsl::parse_or_throw(kEuclid)).empty());
  const Figure p = dsl::parse_or_throw(R"(toolset POSTULATES_ONLY
point A = free_point(0, 0)
point B = free_point(2, 0)
line l = line_through(A, B)
point P = free_point(1, 1)
line m = parallel(l, P)
)");
  const auto v = check_toolset(p);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].step, "m");
  EXPECT_EQ(v[0].tool, "parallel");
  EXPECT_TRUE(check_toolset(p, full_toolset()).empty());
  EXPECT_EQ(postulates_only().allowed.size(), 7u);
  EXPECT_TRUE(toolset_by_name("EUCLID_BOOK1"));
  EXPECT_FALSE(toolset_by_name("NOPE"));
}

TEST(Macro, ExpansionAndNameClash) {
  const Figure f = dsl::parse_or_throw(R"(toolset POSTULATES_ONLY
macro equi(point A, point B) {
  circle c1 = circle_center_point(A, B)
  circle c2 = circle_center_point(B, A)
  point C = intersect(c1, c2, branch=0)
  return C
}
point P = free_point(0, 0)
point Q = free_point(2, 0)
point R = equi(P, Q)
)");
  const Scene s = evaluate(f);
  EXPECT_NEAR((pt(s, "R") - Vec2(1, std::sqrt(3.0))).norm(), 0, 1e-14);
  const auto flat = expand(f);
  EXPECT_EQ(flat.size(), 5u);
  size_t internal = 0;
  for (const auto& st : flat) internal += st.internal;
  EXPECT_EQ(internal, 2u);
  EXPECT_TRUE(check_toolset(f).empty());
  EXPECT_EQ(code_of([&] { define_macro(f, "equi", {{"A", Kind::Point}}, {}, {"A"}); }), ErrorCode::NameClash);
  EXPECT_EQ(code_of([&] { define_macro(f, "bad", {{"A", Kind::Point}}, {}, {"Z"}); }), ErrorCode::IllFormedBody);
}

TEST(Macro, ToolsetCheckIsTransitive) {
  const Figure f = dsl::parse_or_throw(R"(toolset POSTULATES_ONLY
macro mid(point A, point B) {
  point M = midpoint(A, B)
  return M
}
point P = free_point(0, 0)
point Q = free_point(2, 0)
point R = mid(P, Q)
)");
  const auto v = check_toolset(f);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].step, "R");
}

TEST(Locus, DependencyRequired) {
  const Figure f = dsl::parse_or_throw(R"(toolset FULL
point O = free_point(0, 0)
point T = free_point(1, 0)
circle c = circle_center_point(O, T)
point P = point_on(c, 0)
point M = midpoint(O, P)
point Z = free_point(5, 5)
)");
  EXPECT_TRUE(depends_on(f, "M", "P"));
  EXPECT_FALSE(depends_on(f, "Z", "P"));
  EXPECT_EQ(code_of([&] { trace_locus(f, "P", path_from_object(f, "c"), "Z", 8); }), ErrorCode::NoDependency);
  const LocusTrace tr = trace_locus(f, "P", path_from_object(f, "c"), "M", 64);
  ASSERT_EQ(tr.samples.size(), 64u);
  EXPECT_TRUE(tr.closed);
  for (const auto& s : tr.samples) {
    EXPECT_TRUE(s.exists);
    EXPECT_NEAR(s.position.norm(), 0.5, 1e-12);
  }
}

TEST(Locus, TwoSamplesMinimum) {
  LocusPath p{HLine(0, 1, 0), -1, 1};
  EXPECT_DOUBLE_EQ(p.sample_param(0, 2), -1);
  EXPECT_DOUBLE_EQ(p.sample_param(1, 2), 1);
}

TEST(Protocol, TagsMeasuredInputsAndMacros) {
  const Figure f = dsl::parse_or_throw(R"(toolset FULL
point A = free_point(0, 0)
circle c = circle_center_radius(A, 2)
)");
  const auto lines = protocol(f);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_NE(lines[1].find("NON-EUCLIDEAN-INPUT"), std::string::npos);
  EXPECT_EQ(lines[0].find("NON-EUCLIDEAN-INPUT"), std::string::npos);
}

TEST(Figure, WithParamsAndPrefix) {
  const Figure f = dsl::parse_or_throw(kEuclid);
  const Figure g = f.with_params("B", {2, 0});
  EXPECT_NEAR(pt(evaluate(g), "C").x(), 1.0, 1e-15);
  EXPECT_EQ(f.prefix(2).steps().size(), 2u);
  EXPECT_FALSE(f == g);
}
