#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "vecdual/perturbation.hpp"

namespace vecdual {

// A pointwise vector-inequality query over a sampled perturbation problem.
// The unperturbed statement asks that phi(x,0) - L(x) + y stays out of
// -int K at every sample; operator witnesses extend the statement to every
// sampled perturbation: phi(x,z) - L(x) - T(z) + y out of -int K for all
// (x,z). Witnessed statements always imply the unperturbed one (the zero
// perturbation is on every grid); the reverse needs a rich enough operator
// family, which construct_certificate supplies for convex instances.
struct FarkasInstance {
  PerturbationProblem problem;
  LinOp L;
  Vec y;

  FarkasInstance(PerturbationProblem p, LinOp l_in, Vec y_in);
};

// Rank-one dual certificate T(z) = -<z_star, z> k0 obtained by separating
// the query point from the sampled lower difference set
//   { (L(x) - phi(x,z) - k, z) : (x,z) sampled finite, k on K-rays }.
struct Certificate {
  LinOp T_bar;
  Vec z_star;  // z-part of the separating functional
  Vec y_star;  // y-part, normalized so that <y_star, k0> = -1
  Vec k0;      // interior direction of K used for the normalization
  bool verified = false;   // T_bar passes the full perturbed check
  bool positive = false;   // T_bar maps the perturbation cone into K
  bool heuristic = false;  // sampled midpoint convexity check failed
};

// Exact check of the unperturbed statement over the zero-perturbation
// samples. Infinite values satisfy it vacuously.
bool verify_alpha(const FarkasInstance& inst);

// First operator of the grid (in lexicographic entry order) witnessing the
// perturbed statement on the full sample grid, if any. With positive_only,
// only operators mapping the perturbation cone into K are tried.
std::optional<LinOp> search_certificate(const FarkasInstance& inst,
                                        const std::vector<LinOp>& t_grid,
                                        bool positive_only = false);

// Constructive certificate: materialize the lower difference set with
// K-generator rays up to ray_depth, separate (y, 0) from it by an LP
// (margin-maximizing, y-part pinned to -1 on an interior direction, with
// explicit recession rows <y_star, g> <= 0 per K-generator), and read the
// operator off the separating functional. Tries a pure y-space separation
// first (then z_star = 0); when the z-part has a positive pairing with
// some perturbation-cone generator, a re-solve with the sign constraints
// added is preferred if feasible. Throws std::runtime_error when no
// candidate normalization admits a separator.
Certificate construct_certificate(const FarkasInstance& inst,
                                  int ray_depth = 2);

// One probe of the epigraph representation: is (L,y) in the epigraph of
// the unperturbed conjugate, and is it covered by some grid operator's
// conjugate epigraph (or, failing that, by a constructed certificate)?
struct RepresentationProbe {
  std::size_t l_index = 0;
  std::size_t y_index = 0;
  bool in_unperturbed_epi = false;
  bool in_operator_union = false;
  bool certificate_covers = false;
};

struct RepresentationReport {
  bool holds_on_probes = false;
  int probes = 0;
  int rescued = 0;  // probes covered only by a constructed certificate
  // Superset violations (union without unperturbed membership, must never
  // happen) and uncovered probes (grid limitation).
  std::vector<RepresentationProbe> counterexamples;
};

// Compare the unperturbed conjugate epigraph with the union of the
// operator-grid conjugate epigraphs on an (L, y) probe set. The union
// ranges over problem.operator_grid (filtered by positivity on demand);
// probes the grid misses fall back to construct_certificate.
RepresentationReport verify_M_representation(const PerturbationProblem& p,
                                             const std::vector<LinOp>& l_grid,
                                             const std::vector<Vec>& y_grid,
                                             bool positive_only = false);

enum class FarkasMode { AnyOperator, PositiveOperator };

struct FarkasEquivalenceReport {
  FarkasMode mode = FarkasMode::AnyOperator;
  int probes = 0;
  int alpha_count = 0;              // unperturbed statement holds
  int witness_count = 0;            // grid or constructed witness found
  int grid_witness_count = 0;
  int certificate_witness_count = 0;
  int alpha_without_witness = 0;    // grid and construction both miss
  int witness_without_alpha = 0;    // soundness violations; must stay 0
  std::vector<std::pair<std::size_t, std::size_t>> mismatches;

  bool equivalent() const {
    return alpha_without_witness == 0 && witness_without_alpha == 0;
  }
};

// Tabulate the unperturbed statement against witnessed statements over an
// (L, y) probe set, using problem.operator_grid plus the constructive
// fallback. In PositiveOperator mode both the grid filter and the
// certificate acceptance require positivity.
FarkasEquivalenceReport check_farkas_equivalence(
    const PerturbationProblem& p, const std::vector<LinOp>& l_grid,
    const std::vector<Vec>& y_grid, FarkasMode mode = FarkasMode::AnyOperator);

}  // namespace vecdual
