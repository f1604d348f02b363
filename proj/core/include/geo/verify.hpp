#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace geo::verify {

struct Check {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  /// How measured compares to threshold when passing: "<", ">" or "==".
  std::string relation = "<";
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;
  double seconds = 0.0;
  bool passed() const;
};

struct Options {
  std::uint64_t seed = 20190601;
  std::string corpus_dir;
};

/// Seed from GEO_SEED when set; corpus directory from GEO_CORPUS_DIR or the
/// build-time default.
Options default_options();

const std::vector<std::string>& suite_names();
bool has_suite(const std::string& name);

SuiteResult run_suite(const std::string& name, const Options& opt);
/// A single suite, or every suite for "all".
std::vector<SuiteResult> run(const std::string& name, const Options& opt);

/// "[PASS] suite/check  measured ... < threshold  detail"
std::string format(const std::string& suite, const Check& c);

}  // namespace geo::verify
