#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "vecdual/serialize.hpp"

namespace vecdual {

// Scenario loading or validation failure. line/col are 1-based positions in
// the scenario file when the failure maps to a text location (-1 otherwise).
struct ScenarioError : std::runtime_error {
  int line = -1;
  int col = -1;
  ScenarioError(const std::string& msg, int line_in = -1, int col_in = -1)
      : std::runtime_error(msg), line(line_in), col(col_in) {}
};

enum class ScenarioTask {
  Primal,         // primal front of a perturbation problem at one operator
  Dual,           // duality report: direct scheme or composite variant
  Farkas,         // statement/witness tabulation over an (L, y) probe set
  Representation, // conjugate-epigraph union versus unperturbed epigraph
  EpigraphSum,    // scalar conjugate epigraph-sum probes and dual variants
  Properties,     // randomized property suites
  ExampleP1       // built-in worked example with its closed-form oracle
};

struct Scenario {
  std::string name;
  ScenarioTask task = ScenarioTask::Primal;
  std::uint64_t seed = 0;
  int probe_res = 41;      // CSV / probe resolution per axis
  double tolerance = 1e-7; // gap tolerance for duality checks
  Json body;               // task payload (instances, grids, probes, expect)
};

struct RunOptions {
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;  // overrides the scenario's seed
  std::optional<int> probe_res;       // overrides the scenario's resolution
  bool quiet = false;                 // suppress the stdout summary
};

// Parses and validates a scenario file. Throws ScenarioError carrying the
// parse position for malformed JSON, or -1/-1 for schema-level problems.
Scenario load_scenario(const std::string& path);

// Executes the scenario and writes "<name>.report.json" (plus CSV front
// dumps for tasks producing fronts) into options.out_dir. Returns 0 when
// every checked invariant holds, 2 when a numeric invariant fails (the
// report lists each violation). Hard errors -- unusable instance data,
// impossible shapes, unwritable output -- throw ScenarioError. The report
// contents depend only on the scenario and the effective seed.
int run_scenario(const Scenario& s, const RunOptions& options);

}  // namespace vecdual
