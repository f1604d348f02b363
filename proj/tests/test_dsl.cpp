#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "geo/dsl.hpp"

using namespace geo;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::filesystem::path> corpus() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(GEO_CORPUS_DIR))
    if (e.path().extension() == ".geo") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

dsl::ParseError first_error(std::string_view src) {
  const auto r = dsl::parse(src);
  EXPECT_FALSE(r.ok());
  EXPECT_FALSE(r.errors.empty());
  return r.errors.empty() ? dsl::ParseError{} : r.errors.front();
}

}  // namespace

TEST(Dsl, CorpusParsesAndRoundTrips) {
  const auto files = corpus();
  ASSERT_GE(files.size(), 10u);
  for (const auto& f : files) {
    SCOPED_TRACE(f.filename().string());
    const auto r = dsl::parse(slurp(f));
    ASSERT_TRUE(r.ok()) << (r.errors.empty() ? "" : dsl::format(r.errors[0]));
    const std::string text = dsl::serialize(*r.figure);
    const cons::Figure again = dsl::parse_or_throw(text);
    EXPECT_TRUE(again == *r.figure);
    EXPECT_EQ(dsl::serialize(again), text);
  }
}

TEST(Dsl, CommentsAndBlankLines) {
  const auto r = dsl::parse("# header\n\ntoolset FULL  # rules\n\npoint A = free_point(1, 2) # a point\n");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.figure->steps().size(), 1u);
}

TEST(Dsl, NumericLiterals) {
  EXPECT_DOUBLE_EQ(*dsl::parse_number("-sqrt(3)/2"), -std::sqrt(3.0) / 2);
  EXPECT_DOUBLE_EQ(*dsl::parse_number("2*pi"), 2 * M_PI);
  EXPECT_NEAR(*dsl::parse_number("phi"), (1 + std::sqrt(5.0)) / 2, 1e-15);
  EXPECT_DOUBLE_EQ(*dsl::parse_number("1.5e2"), 150);
  EXPECT_FALSE(dsl::parse_number("sqrt(-1)"));
  EXPECT_FALSE(dsl::parse_number("1/0"));
  EXPECT_FALSE(dsl::parse_number("abc"));
}

TEST(Dsl, MissingToolsetHeader) {
  const auto e = first_error("point A = free_point(0, 0)\n");
  EXPECT_EQ(e.line, 1u);
  EXPECT_EQ(e.column, 1u);
}

TEST(Dsl, UnknownToolset) {
  const auto e = first_error("toolset MAGIC\n");
  EXPECT_EQ(e.kind, dsl::ErrorKind::UnknownToolset);
  EXPECT_EQ(e.column, 9u);
}

TEST(Dsl, UndefinedIdentifierPosition) {
  const auto e = first_error("toolset FULL\npoint A = free_point(0, 0)\nline l = line_through(A, Q)\n");
  EXPECT_EQ(e.kind, dsl::ErrorKind::UndefinedIdentifier);
  EXPECT_EQ(e.line, 3u);
  EXPECT_EQ(e.column, 26u);
  EXPECT_NE(e.message.find("'Q'"), std::string::npos);
}

TEST(Dsl, UnknownTool) {
  const auto e = first_error("toolset FULL\npoint A = teleport(0, 0)\n");
  EXPECT_EQ(e.kind, dsl::ErrorKind::UnknownTool);
  EXPECT_EQ(e.line, 2u);
  EXPECT_EQ(e.column, 11u);
}

TEST(Dsl, DeclaredTypeMustMatch) {
  const auto e = first_error("toolset FULL\npoint A = free_point(0, 0)\nline B = free_point(1, 0)\n");
  EXPECT_EQ(e.kind, dsl::ErrorKind::TypeMismatch);
  EXPECT_EQ(e.line, 3u);
}

TEST(Dsl, DuplicateAndArity) {
  auto e = first_error("toolset FULL\npoint A = free_point(0, 0)\npoint A = free_point(1, 0)\n");
  EXPECT_EQ(e.kind, dsl::ErrorKind::DuplicateId);
  e = first_error("toolset FULL\npoint A = free_point(0, 0)\nline l = line_through(A)\n");
  EXPECT_EQ(e.kind, dsl::ErrorKind::Arity);
}

TEST(Dsl, BadBranch) {
  const auto e = first_error(R"(toolset FULL
point A = free_point(0, 0)
point B = free_point(1, 0)
circle a = circle_center_point(A, B)
circle b = circle_center_point(B, A)
point C = intersect(a, b, branch=2)
)");
  EXPECT_EQ(e.kind, dsl::ErrorKind::BadParam);
  EXPECT_EQ(e.line, 6u);
}

TEST(Dsl, CollectsSeveralErrorsWithoutCascades) {
  const auto r = dsl::parse("toolset FULL\npoint A = free_point(0, )\nline l = line_through(A, A)\npoint = 3\n");
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.errors.size(), 2u);
  EXPECT_EQ(r.errors[0].line, 2u);
  EXPECT_EQ(r.errors[1].line, 4u);
}

TEST(Dsl, MacroErrors) {
  auto e = first_error("toolset FULL\nmacro m(point A) {\n  point B = midpoint(A, Z)\n  return B\n}\n");
  EXPECT_EQ(e.line, 3u);
  e = first_error("toolset FULL\nmacro m(point A) {\n  return A\n");
  EXPECT_EQ(e.kind, dsl::ErrorKind::Syntax);
  e = first_error("toolset FULL\npoint A = free_point(0, 0)\npoint B = m(A)\n");
  EXPECT_EQ(e.kind, dsl::ErrorKind::UnknownTool);
}

TEST(Dsl, ErrorFormat) {
  dsl::ParseError e;
  e.line = 3;
  e.column = 7;
  e.message = "boom";
  EXPECT_EQ(dsl::format(e), "3:7: boom");
}

TEST(Dsl, ParseOrThrow) {
  try {
    dsl::parse_or_throw("toolset FULL\npoint A = nope()\n");
    FAIL();
  } catch (const GeoError& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedFigure);
    EXPECT_NE(std::string(e.what()).find("2:"), std::string::npos);
  }
}

TEST(Dsl, SerializeKeepsFullPrecision) {
  const auto f = dsl::parse_or_throw("toolset FULL\npoint A = free_point(sqrt(2), pi/3)\n");
  const auto g = dsl::parse_or_throw(dsl::serialize(f));
  EXPECT_EQ(g.steps()[0].params, f.steps()[0].params);
}

// Random mutations of corpus files never crash the parser and every
// diagnostic points inside the source.
TEST(Dsl, FuzzMutationsAreDiagnosed) {
  std::mt19937_64 rng(20190601);
  const std::string alphabet = "(),=#{}\n abcxyzABC0123456789.-+*/_\t\x01\xff";
  for (const auto& f : corpus()) {
    const std::string src = slurp(f);
    for (int k = 0; k < 150; ++k) {
      std::string s = src;
      const int edits = 1 + static_cast<int>(rng() % 4);
      for (int i = 0; i < edits && !s.empty(); ++i) {
        const size_t pos = rng() % s.size();
        switch (rng() % 3) {
          case 0: s.erase(pos, 1 + rng() % 5); break;
          case 1: s.insert(pos, 1, alphabet[rng() % alphabet.size()]); break;
          default: s[pos] = alphabet[rng() % alphabet.size()];
        }
      }
      dsl::ParseResult r;
      ASSERT_NO_THROW(r = dsl::parse(s));
      const size_t lines = static_cast<size_t>(std::count(s.begin(), s.end(), '\n')) + 1;
      if (!r.ok()) {
        ASSERT_FALSE(r.errors.empty());
      }
      for (const auto& e : r.errors) {
        EXPECT_GE(e.line, 1u);
        EXPECT_LE(e.line, lines + 1);
        EXPECT_GE(e.column, 1u);
      }
    }
  }
}
