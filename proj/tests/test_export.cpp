#include <gtest/gtest.h>

#include <regex>

#include "geo/dsl.hpp"
#include "geo/export.hpp"

using namespace geo;

namespace {

const char* kCircleMid = R"(toolset FULL
point O = free_point(0, 0)
point T = free_point(1, 0)
circle c = circle_center_point(O, T)
point P = point_on(c, 0)
point M = midpoint(O, P)
)";

cons::LocusTrace trace(int n) {
  const auto f = dsl::parse_or_throw(kCircleMid);
  return cons::trace_locus(f, "P", cons::path_from_object(f, "c"), "M", n);
}

}  // namespace

TEST(Csv, HeaderAndRows) {
  const std::string csv = io::trace_csv(trace(2));
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], "t,x,y,exists");
  EXPECT_TRUE(std::regex_match(rows[1], std::regex(R"([-0-9.e+]+,[-0-9.e+]+,[-0-9.e+]+,1)")));
}

TEST(Csv, MissingSamplesLeaveEmptyCoordinates) {
  cons::LocusTrace t;
  t.samples.push_back({0.5, Vec2(0, 0), false});
  EXPECT_EQ(io::trace_csv(t), "t,x,y,exists\n0.5,,,0\n");
}

TEST(Csv, Deterministic) { EXPECT_EQ(io::trace_csv(trace(100)), io::trace_csv(trace(100))); }

TEST(Svg, ViewBoxHasFivePercentMargin) {
  const auto f = dsl::parse_or_throw(kCircleMid);
  const cons::Scene s = cons::evaluate(f);
  const io::Box b = io::bounding_box(s, {});
  EXPECT_NEAR(b.x0, -1, 1e-12);
  EXPECT_NEAR(b.x1, 1, 1e-12);
  EXPECT_NEAR(b.y0, -1, 1e-12);
  EXPECT_NEAR(b.y1, 1, 1e-12);
  const std::string svg = io::render_svg(s, {trace(32).polyline()});
  std::smatch m;
  ASSERT_TRUE(std::regex_search(svg, m, std::regex(R"(viewBox="([^ ]+) ([^ ]+) ([^ ]+) ([^"]+)\")")));
  EXPECT_NEAR(std::stod(m[1]), -1.1, 1e-9);
  EXPECT_NEAR(std::stod(m[3]), 2.2, 1e-9);
  EXPECT_NEAR(std::stod(m[4]), 2.2, 1e-9);
}

TEST(Svg, WellFormedTags) {
  const auto f = dsl::parse_or_throw(kCircleMid);
  const std::string svg = io::render_svg(cons::evaluate(f), {trace(16).polyline()});
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NE(svg.find("id=\"trace\""), std::string::npos);
  // Every opened element is closed or self-closing.
  std::vector<std::string> stack;
  std::regex tag(R"(<(/?)([a-zA-Z]+)[^>]*?(/?)>)");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), tag); it != std::sregex_iterator(); ++it) {
    const auto& mm = *it;
    if (mm[1] == "/") {
      ASSERT_FALSE(stack.empty());
      EXPECT_EQ(stack.back(), mm[2].str());
      stack.pop_back();
    } else if (mm[3] != "/") {
      stack.push_back(mm[2]);
    }
  }
  EXPECT_TRUE(stack.empty());
}

TEST(Svg, GapsSplitPolyline) {
  cons::LocusTrace t;
  for (int i = 0; i < 6; ++i) t.samples.push_back({i / 5.0, Vec2(i, i * i), i != 2});
  const cons::PolylineValue p = t.polyline();
  ASSERT_EQ(p.pieces.size(), 2u);
  EXPECT_EQ(p.pieces[0].size(), 2u);
  EXPECT_EQ(p.pieces[1].size(), 3u);
}
