#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vecdual {

// Outcome of one randomized property suite. `checks` counts individual
// property evaluations; every failure also records a short description (the
// list is capped, the counter is not).
struct PropertyReport {
  std::string name;
  long checks = 0;
  long failures = 0;
  std::vector<std::string> details;

  bool passed() const { return failures == 0 && checks > 0; }
  void fail(const std::string& what) {
    ++failures;
    if (details.size() < 16) details.push_back(what);
  }
  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok) fail(what);
  }
};

// Instance counts for the randomized suites; the defaults are the sizes the
// acceptance gate runs.
struct SuiteCounts {
  int weak_sets_r2 = 100;
  int weak_sets_r3 = 50;
  int bridge_maps = 100;
  int farkas_instances = 50;
  int farkas_probes = 20;
  int certificate_fixtures = 20;
  int split_instances = 20;
  int scalar_slater = 20;
  int scalar_nonslater = 5;
};

// Random weak-front algebra: three-way probe-grid partition, translation
// equivariance, absorption of dominated generators, WS-sum neutral element /
// commutativity / associativity, order monotonicity, and the winf <= id <=
// wsup sandwich, over random planar and spatial cones.
PropertyReport weak_sets_suite(std::uint64_t seed, int r2_sets, int r3_sets);

// Conjugate-epigraph bridge: the union map over {(L, conjugate at L)} agrees
// pointwise with epigraph membership, and membership is upward closed.
PropertyReport bridge_suite(std::uint64_t seed, int maps);

// Unconditional implications between the certificate statements: a positive
// witness implies a witness, a witness implies the unperturbed statement,
// and each witnessing operator's epigraph sits inside the unperturbed one.
PropertyReport farkas_soundness_suite(std::uint64_t seed, int instances,
                                      int probes);

// Constructive separation on convex, constraint-monotone fixtures: every
// probe where the unperturbed statement holds gets a verified certificate;
// composite-built fixtures keep the multiplier inside the dual sign cone.
PropertyReport certificate_suite(std::uint64_t seed, int fixtures);

// Conjugate-of-a-sum split identity on random composite instances, including
// operators that map the composite cone into the ordering cone.
PropertyReport conjugate_split_suite(std::uint64_t seed, int instances);

// Scalar oracle corpus: epigraph-sum probe agreement, all dual variants
// matching the primal under strict feasibility, weak duality without it, and
// the scalar-vs-vector machinery crosscheck.
PropertyReport scalar_suite(std::uint64_t seed, int slater, int nonslater);

std::vector<PropertyReport> run_all_property_suites(std::uint64_t seed,
                                                    const SuiteCounts& c = {});

}  // namespace vecdual
