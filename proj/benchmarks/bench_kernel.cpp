#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <sstream>

#include "geo/curves.hpp"
#include "geo/dsl.hpp"
#include "geo/transforms.hpp"

using namespace geo;

namespace {

std::string corpus_file(const char* name) {
  std::ifstream in(std::string(GEO_CORPUS_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void BM_IntersectCircleCircle(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<std::pair<Circle, Circle>> pairs;
  for (int i = 0; i < 256; ++i) pairs.emplace_back(Circle(u(rng), u(rng), 1 + u(rng) * 0.5), Circle(u(rng), u(rng), 1));
  size_t i = 0;
  for (auto _ : state) {
    const auto& [a, b] = pairs[i++ & 255];
    benchmark::DoNotOptimize(intersect(a, b));
  }
}
BENCHMARK(BM_IntersectCircleCircle);

void BM_IntersectLineConic(benchmark::State& state) {
  const Conic c = Conic::from_coefficients(1, 0.2, 3, -0.5, 0.4, -2);
  double t = 0;
  for (auto _ : state) {
    t += 1e-3;
    benchmark::DoNotOptimize(intersect(HLine(std::cos(t), std::sin(t), -0.1), c));
  }
}
BENCHMARK(BM_IntersectLineConic);

void BM_EvaluateEuclidI1(benchmark::State& state) {
  const cons::Figure f = dsl::parse_or_throw(corpus_file("euclid_I1.geo"));
  for (auto _ : state) benchmark::DoNotOptimize(cons::evaluate(f));
}
BENCHMARK(BM_EvaluateEuclidI1);

// One drag frame: the interactive cost per pointer event.
void BM_DragEuclidI1(benchmark::State& state) {
  cons::Figure f = dsl::parse_or_throw(corpus_file("euclid_I1.geo"));
  cons::BranchState st;
  cons::evaluate(f, {}, &st);
  double a = 0;
  for (auto _ : state) {
    a += 1e-3;
    cons::DragResult r = cons::drag(f, st, "B", Vec2(std::cos(a), std::sin(a)));
    st = std::move(r.state);
    benchmark::DoNotOptimize(r.scene);
  }
}
BENCHMARK(BM_DragEuclidI1);

void BM_WarmEvaluateDecagon(benchmark::State& state) {
  const cons::Figure f = dsl::parse_or_throw(corpus_file("decagon.geo"));
  cons::BranchState st;
  cons::evaluate(f, {}, &st);
  for (auto _ : state) benchmark::DoNotOptimize(cons::evaluate(f, st, nullptr));
}
BENCHMARK(BM_WarmEvaluateDecagon);

void BM_TraceDeltoid(benchmark::State& state) {
  const cons::Figure f = dsl::parse_or_throw(corpus_file("deltoid.geo"));
  const cons::LocusPath path = cons::path_from_object(f, "inc");
  for (auto _ : state) benchmark::DoNotOptimize(cons::trace_locus(f, "F", path, "Q", static_cast<int>(state.range(0))));
}
BENCHMARK(BM_TraceDeltoid)->Arg(64)->Arg(720);

void BM_ParseCorpus(benchmark::State& state) {
  const std::string src = corpus_file("conjugate_conic.geo");
  for (auto _ : state) benchmark::DoNotOptimize(dsl::parse(src));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * src.size()));
}
BENCHMARK(BM_ParseCorpus);

void BM_StrictTransform(benchmark::State& state) {
  const alg::QuadraticMap m = alg::bh_map_polys(alg::canonical_exact_config());
  const std::vector<alg::Poly> forbidden = {m.lines[0].form, m.lines[1].form, m.lines[2].form};
  std::mt19937_64 rng(3);
  const int n = static_cast<int>(state.range(0));
  const std::array<int, 3> t = {1, 1, 0};
  const auto c = alg::curve_with_multiplicities(n, m.fundamental, t, forbidden, rng);
  if (!c) {
    state.SkipWithError("no curve");
    return;
  }
  for (auto _ : state) benchmark::DoNotOptimize(alg::strict_transform(*c, m));
}
BENCHMARK(BM_StrictTransform)->DenseRange(2, 4);

void BM_BHInvert(benchmark::State& state) {
  const BHConfig cfg = canonical_bh_config();
  double a = 0.1;
  for (auto _ : state) {
    a += 1e-4;
    benchmark::DoNotOptimize(bh_invert(cfg, HPoint::finite(0.4 + 0.1 * std::cos(a), 0.3 + 0.1 * std::sin(a))));
  }
}
BENCHMARK(BM_BHInvert);

}  // namespace
BENCHMARK_MAIN();
