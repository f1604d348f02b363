// geo: run, trace, verify and serve constructions.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "geo/dsl.hpp"
#include "geo/export.hpp"
#include "geo/session.hpp"
#include "geo/verify.hpp"
#include "server.hpp"

namespace {

using namespace geo;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Parses a file, printing diagnostics; nullopt on failure.
std::optional<cons::Figure> load_figure(const std::string& path) {
  const auto src = read_file(path);
  if (!src) {
    std::cerr << path << ": cannot read file\n";
    return std::nullopt;
  }
  dsl::ParseResult r = dsl::parse(*src);
  if (!r.ok()) {
    for (const auto& e : r.errors) std::cerr << path << ":" << dsl::format(e) << "\n";
    return std::nullopt;
  }
  return std::move(*r.figure);
}

// Side lengths of closed polygons, with a note when they are all equal.
std::string polygon_note(const cons::SceneObject& o) {
  const auto* poly = std::get_if<cons::PolylineValue>(&o.value);
  if (!o.exists || !poly || o.kind != cons::Kind::Polygon || poly->pieces.size() != 1) return "";
  const auto& pts = poly->pieces[0];
  double lo = 1e300, hi = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    const double d = (pts[(i + 1) % pts.size()] - pts[i]).norm();
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  std::string note = "sides in [" + cons::format_number(lo) + ", " + cons::format_number(hi) + "]";
  if (hi - lo < 1e-9) note += pts.size() == 3 ? ", equilateral" : ", equilateral polygon";
  return note;
}

int cmd_run(const std::string& path, bool json) {
  const auto fig = load_figure(path);
  if (!fig) return 1;
  const cons::Scene scene = cons::evaluate(*fig);
  if (json) {
    std::cout << serve::scene_frame(scene) << "\n";
    return scene.all_exist() ? 0 : 2;
  }
  std::cout << "toolset " << fig->toolset().name << "\n\nprotocol:\n";
  for (const auto& line : cons::protocol(*fig)) std::cout << "  " << line << "\n";
  for (const auto& v : cons::check_toolset(*fig))
    std::cout << "warning: step " << v.step << " uses " << v.tool << ", outside " << fig->toolset().name << "\n";
  std::cout << "\nscene:\n";
  for (const auto& o : scene.objects()) {
    if (o.internal) continue;
    std::cout << "  " << o.id << " : " << cons::to_string(o.kind) << " " << io::describe_value(o);
    if (const std::string note = polygon_note(o); !note.empty()) std::cout << "  [" << note << "]";
    std::cout << "\n";
  }
  if (!scene.all_exist()) {
    std::cerr << "some objects do not exist\n";
    return 2;
  }
  return 0;
}

int cmd_trace(const std::string& path, const std::string& mover, const std::string& path_id,
              const std::string& target, int n, const std::string& out, std::string format) {
  const auto fig = load_figure(path);
  if (!fig) return 1;
  if (format.empty()) format = out.size() >= 4 && out.substr(out.size() - 4) == ".svg" ? "svg" : "csv";
  if (format != "csv" && format != "svg") {
    std::cerr << "unknown format '" << format << "'\n";
    return 1;
  }
  try {
    const cons::LocusTrace trace = cons::trace_locus(*fig, mover, cons::path_from_object(*fig, path_id), target, n);
    const std::string text =
        format == "csv" ? io::trace_csv(trace) : io::render_svg(cons::evaluate(*fig), {trace.polyline()});
    if (out.empty() || out == "-") {
      std::cout << text;
    } else {
      std::ofstream f(out, std::ios::binary);
      if (!(f << text)) {
        std::cerr << out << ": cannot write\n";
        return 1;
      }
    }
  } catch (const GeoError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}

int cmd_verify(const std::string& suite, std::optional<std::uint64_t> seed) {
  verify::Options opt = verify::default_options();
  if (seed) opt.seed = *seed;
  if (suite != "all" && !verify::has_suite(suite)) {
    std::cerr << "unknown suite '" << suite << "'; available:";
    for (const auto& n : verify::suite_names()) std::cerr << " " << n;
    std::cerr << " all\n";
    return 1;
  }
  bool ok = true;
  double total = 0;
  std::cout << "seed " << opt.seed << "\n";
  for (const auto& r : verify::run(suite, opt)) {
    for (const auto& c : r.checks) std::cout << verify::format(r.suite, c) << "\n";
    std::printf("  %s: %s in %.2f s\n", r.suite.c_str(), r.passed() ? "pass" : "FAIL", r.seconds);
    std::fflush(stdout);
    ok = ok && r.passed();
    total += r.seconds;
  }
  std::printf("%s (%.2f s)\n", ok ? "all checks passed" : "some checks FAILED", total);
  return ok ? 0 : 1;
}

int cmd_serve(const std::string& host, std::uint16_t port) {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);

  serve::Server server;
  std::uint16_t bound = 0;
  try {
    bound = server.listen(host, port);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  std::cout << "listening on " << host << ":" << bound << std::endl;
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&set, &sig);
    server.stop();
  });
  server.run();
  server.stop();
  // Wake the waiter if run() returned for another reason.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  std::cout << "shut down" << std::endl;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic-geometry construction kernel"};
  app.require_subcommand(1);

  std::string file, mover, path, target, out, format, suite = "all", host = "127.0.0.1";
  bool json = false;
  int n = 256;
  std::uint16_t port = 8765;
  std::optional<std::uint64_t> seed;

  auto* run = app.add_subcommand("run", "Evaluate a construction and print its protocol and scene");
  run->add_option("file", file, ".geo file")->required();
  run->add_flag("--json", json, "Print the scene as a JSON frame");

  auto* trace = app.add_subcommand("trace", "Sample a locus while a point sweeps a path");
  trace->add_option("file", file, ".geo file")->required();
  trace->add_option("--mover", mover, "Draggable point")->required();
  trace->add_option("--path", path, "Circle, line or segment swept by the mover")->required();
  trace->add_option("--target", target, "Point to sample")->required();
  trace->add_option("--n", n, "Sample count")->check(CLI::Range(2, 1000000));
  trace->add_option("--out", out, "Output file (stdout when omitted)");
  trace->add_option("--format", format, "csv or svg (default from --out extension)");

  auto* ver = app.add_subcommand("verify", "Run property suites");
  ver->add_option("suite", suite, "Suite name or all");
  ver->add_option("--seed", seed, "RNG seed (default GEO_SEED or built-in)");

  auto* srv = app.add_subcommand("serve", "Serve UI sessions over TCP / WebSocket");
  srv->add_option("--port", port, "Port to listen on");
  srv->add_option("--host", host, "Address to bind");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (*run) return cmd_run(file, json);
  if (*trace) return cmd_trace(file, mover, path, target, n, out, format);
  if (*ver) return cmd_verify(suite, seed);
  if (*srv) return cmd_serve(host, port);
  return 1;
}
