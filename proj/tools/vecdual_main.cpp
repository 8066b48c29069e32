#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "vecdual/properties.hpp"
#include "vecdual/scenario.hpp"

namespace {

int run_properties_check(std::uint64_t seed, bool quick, bool quiet) {
  vecdual::SuiteCounts counts;
  if (quick) {
    counts.weak_sets_r2 = 10;
    counts.weak_sets_r3 = 4;
    counts.bridge_maps = 10;
    counts.farkas_instances = 6;
    counts.farkas_probes = 6;
    counts.certificate_fixtures = 4;
    counts.split_instances = 4;
    counts.scalar_slater = 6;
    counts.scalar_nonslater = 2;
  }
  auto reports = vecdual::run_all_property_suites(seed, counts);
  bool ok = true;
  long checks = 0, failures = 0;
  for (const auto& r : reports) {
    ok = ok && r.passed();
    checks += r.checks;
    failures += r.failures;
    if (!quiet) {
      std::cout << (r.passed() ? "pass" : "FAIL") << "  " << r.name << "  ("
                << r.checks << " checks, " << r.failures << " failures)\n";
      for (const auto& d : r.details) std::cout << "      " << d << "\n";
    }
  }
  std::cout << (ok ? "all suites passed" : "SUITE FAILURES") << " (" << checks
            << " checks, " << failures << " failures, seed " << seed << ")\n";
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-dimensional vector duality toolkit"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "execute a scenario file");
  std::string scenario_path;
  std::string out_dir = "out";
  std::uint64_t seed_value = 0;
  int probe_res_value = 0;
  bool quiet = false;
  run->add_option("--scenario", scenario_path, "scenario JSON file")
      ->required();
  run->add_option("--out", out_dir, "output directory (default: out)");
  auto* run_seed =
      run->add_option("--seed", seed_value, "override the scenario seed");
  auto* run_res = run->add_option("--probe-res", probe_res_value,
                                  "override the probe/CSV resolution");
  run->add_flag("--quiet", quiet, "suppress the stdout summary");

  auto* check =
      app.add_subcommand("check", "run the randomized property suites");
  std::uint64_t check_seed = 0;
  bool quick = false;
  bool check_quiet = false;
  check->add_option("--seed", check_seed, "suite seed (default 0)");
  check->add_flag("--quick", quick, "reduced instance counts");
  check->add_flag("--quiet", check_quiet, "summary line only");

  auto* p1 = app.add_subcommand("p1", "run the built-in worked example");
  std::string p1_out = "out";
  int p1_res = 41;
  bool coarse = false;
  bool p1_quiet = false;
  p1->add_option("--out", p1_out, "output directory (default: out)");
  p1->add_option("--probe-res", p1_res, "CSV resolution per axis");
  p1->add_flag("--coarse", coarse, "skip the closed-form comparison sweep");
  p1->add_flag("--quiet", p1_quiet, "suppress the stdout summary");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      vecdual::Scenario s = vecdual::load_scenario(scenario_path);
      vecdual::RunOptions o;
      o.out_dir = out_dir;
      o.quiet = quiet;
      if (run_seed->count() > 0) o.seed = seed_value;
      if (run_res->count() > 0) o.probe_res = probe_res_value;
      return vecdual::run_scenario(s, o);
    }
    if (check->parsed())
      return run_properties_check(check_seed, quick, check_quiet);
    if (p1->parsed()) {
      vecdual::Scenario s;
      s.name = "example_p1";
      s.task = vecdual::ScenarioTask::ExampleP1;
      s.probe_res = p1_res;
      s.body = vecdual::Json{{"verify_closed_form", !coarse}};
      vecdual::RunOptions o;
      o.out_dir = p1_out;
      o.quiet = p1_quiet;
      return vecdual::run_scenario(s, o);
    }
  } catch (const vecdual::ScenarioError& e) {
    std::cerr << "error";
    if (e.line >= 0)
      std::cerr << " (line " << e.line << ", column " << e.col << ")";
    std::cerr << ": " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
