#pragma once

#include "vecdual/common.hpp"

namespace vecdual {

enum class LPStatus { Optimal, Infeasible, Unbounded, IterLimit };

enum class RowSense { LE, GE, EQ };

struct LPRow {
  Vec a;
  RowSense sense = RowSense::LE;
  double b = 0.0;
};

// Variables are nonnegative unless flagged free. `maximize` flips the
// objective; duals are reported in the conventions of the problem as given
// (for a maximization, a binding LE row has a nonnegative dual).
struct LinearProgram {
  int n = 0;
  Vec c;
  bool maximize = false;
  std::vector<LPRow> rows;
  std::vector<std::uint8_t> free_var;  // empty means all nonnegative

  explicit LinearProgram(int n_vars) : n(n_vars) {
    c.assign(static_cast<std::size_t>(n_vars), 0.0);
  }
  void minimize(Vec obj) {
    require_dim(obj, static_cast<std::size_t>(n), "LP objective");
    c = std::move(obj);
    maximize = false;
  }
  void maximize_obj(Vec obj) {
    require_dim(obj, static_cast<std::size_t>(n), "LP objective");
    c = std::move(obj);
    maximize = true;
  }
  void add_row(Vec a, RowSense s, double b) {
    require_dim(a, static_cast<std::size_t>(n), "LP row");
    rows.push_back({std::move(a), s, b});
  }
  void mark_free(int j) {
    if (free_var.empty()) free_var.assign(static_cast<std::size_t>(n), 0);
    free_var[static_cast<std::size_t>(j)] = 1;
  }
};

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  double value = 0.0;
  Vec x;             // primal solution (original variables)
  Vec dual;          // one multiplier per row, original conventions
  Vec row_activity;  // a_i . x per row
  int iterations = 0;

  bool optimal() const { return status == LPStatus::Optimal; }
};

// Self-contained two-phase dense simplex with Bland's rule (pivot tolerance
// 1e-9). Deterministic for identical inputs.
LPResult lp_solve(const LinearProgram& lp);

}  // namespace vecdual
