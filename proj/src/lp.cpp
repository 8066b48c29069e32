#include "vecdual/lp.hpp"

#include <limits>

namespace vecdual {

namespace {

constexpr double kPivTol = 1e-9;

struct Tableau {
  // Standard form: minimize c.z subject to A z = b, z >= 0.
  int m = 0,
      n = 0;  // rows, structural+slack columns (artificials appended later)
  std::vector<double> A;  // row-major m x n
  Vec b;
  Vec c;
  double& at(int i, int j) { return A[static_cast<std::size_t>(i) * n + j]; }
  double at(int i, int j) const { return A[static_cast<std::size_t>(i) * n + j]; }
};

// One simplex phase on the tableau with basis `basis` (size m), minimizing
// cost vector `cost` (size tab.n). Bland's rule. Columns >= enter_limit may
// never enter the basis (used to fence off artificials in phase 2). Returns
// status.
LPStatus simplex_phase(Tableau& tab, std::vector<int>& basis, const Vec& cost,
                       int enter_limit, int iter_cap, int& iters) {
  const int m = tab.m, n = tab.n;
  while (true) {
    if (++iters > iter_cap) return LPStatus::IterLimit;
    // Reduced costs: r_j = c_j - y.A_j with y solved implicitly from the
    // current (already pivoted, identity-on-basis) tableau: since we keep the
    // tableau fully reduced, r_j = cost_j - sum_i cost[basis[i]] * A[i][j].
    int enter = -1;
    for (int j = 0; j < std::min(n, enter_limit); ++j) {
      double r = cost[static_cast<std::size_t>(j)];
      for (int i = 0; i < m; ++i)
        r -= cost[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])] *
             tab.at(i, j);
      if (r < -kPivTol) {
        enter = j;  // Bland: lowest index
        break;
      }
    }
    if (enter < 0) return LPStatus::Optimal;
    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      double aij = tab.at(i, enter);
      if (aij > kPivTol) {
        double ratio = tab.b[static_cast<std::size_t>(i)] / aij;
        if (ratio < best_ratio - kPivTol ||
            (ratio < best_ratio + kPivTol &&
             (leave < 0 || basis[static_cast<std::size_t>(i)] <
                               basis[static_cast<std::size_t>(leave)]))) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) return LPStatus::Unbounded;
    // Pivot on (leave, enter).
    double piv = tab.at(leave, enter);
    for (int j = 0; j < n; ++j) tab.at(leave, j) /= piv;
    tab.b[static_cast<std::size_t>(leave)] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave) continue;
      double f = tab.at(i, enter);
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) tab.at(i, j) -= f * tab.at(leave, j);
      tab.b[static_cast<std::size_t>(i)] -= f * tab.b[static_cast<std::size_t>(leave)];
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }
}

// Solve B^T y = cB by Gaussian elimination with partial pivoting.
Vec solve_transposed(const std::vector<Vec>& bcols, const Vec& cb) {
  const int m = static_cast<int>(cb.size());
  // Matrix rows of B^T are the basis columns.
  std::vector<Vec> a(static_cast<std::size_t>(m));
  Vec rhs = cb;
  for (int i = 0; i < m; ++i) a[static_cast<std::size_t>(i)] = bcols[static_cast<std::size_t>(i)];
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int r = col + 1; r < m; ++r)
      if (std::abs(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) >
          std::abs(a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)]))
        piv = r;
    std::swap(a[static_cast<std::size_t>(col)], a[static_cast<std::size_t>(piv)]);
    std::swap(rhs[static_cast<std::size_t>(col)], rhs[static_cast<std::size_t>(piv)]);
    double d = a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
    if (std::abs(d) < 1e-12) {
      // Degenerate basis column; treat as zero contribution.
      rhs[static_cast<std::size_t>(col)] = 0.0;
      a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)] = 1.0;
      continue;
    }
    for (int r = col + 1; r < m; ++r) {
      double f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] / d;
      if (f == 0.0) continue;
      for (int k = col; k < m; ++k)
        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] -=
            f * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(k)];
      rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(col)];
    }
  }
  Vec y(static_cast<std::size_t>(m), 0.0);
  for (int r = m - 1; r >= 0; --r) {
    double s = rhs[static_cast<std::size_t>(r)];
    for (int k = r + 1; k < m; ++k)
      s -= a[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] *
           y[static_cast<std::size_t>(k)];
    y[static_cast<std::size_t>(r)] = s / a[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)];
  }
  return y;
}

}  // namespace

LPResult lp_solve(const LinearProgram& lp) {
  require(lp.n >= 0 && lp.c.size() == static_cast<std::size_t>(lp.n),
          "lp_solve: objective size mismatch");
  for (const auto& r : lp.rows)
    require_dim(r.a, static_cast<std::size_t>(lp.n), "lp_solve row");

  const int m = static_cast<int>(lp.rows.size());
  // Column layout: for each original variable j, one column (nonnegative) or
  // two columns (free split x = x+ - x-); then one slack/surplus column per
  // inequality row.
  std::vector<int> col_of_var(static_cast<std::size_t>(lp.n), 0);
  std::vector<std::uint8_t> is_free(static_cast<std::size_t>(lp.n), 0);
  if (!lp.free_var.empty())
    for (int j = 0; j < lp.n; ++j) is_free[static_cast<std::size_t>(j)] = lp.free_var[static_cast<std::size_t>(j)];
  int ncols = 0;
  for (int j = 0; j < lp.n; ++j) {
    col_of_var[static_cast<std::size_t>(j)] = ncols;
    ncols += is_free[static_cast<std::size_t>(j)] ? 2 : 1;
  }
  const int slack_base = ncols;
  int nslack = 0;
  for (const auto& r : lp.rows)
    if (r.sense != RowSense::EQ) ++nslack;
  ncols += nslack;

  Tableau tab;
  tab.m = m;
  tab.n = ncols;
  tab.A.assign(static_cast<std::size_t>(m) * ncols, 0.0);
  tab.b.assign(static_cast<std::size_t>(m), 0.0);

  // Objective over standardized columns (minimization internally).
  Vec cost(static_cast<std::size_t>(ncols), 0.0);
  double sign = lp.maximize ? -1.0 : 1.0;
  for (int j = 0; j < lp.n; ++j) {
    double cj = sign * lp.c[static_cast<std::size_t>(j)];
    cost[static_cast<std::size_t>(col_of_var[static_cast<std::size_t>(j)])] = cj;
    if (is_free[static_cast<std::size_t>(j)])
      cost[static_cast<std::size_t>(col_of_var[static_cast<std::size_t>(j)] + 1)] = -cj;
  }

  // Fill rows, flipping signs so b >= 0.
  int si = 0;
  std::vector<double> row_flip(static_cast<std::size_t>(m), 1.0);
  for (int i = 0; i < m; ++i) {
    const auto& r = lp.rows[static_cast<std::size_t>(i)];
    double flip = r.b < 0.0 ? -1.0 : 1.0;
    row_flip[static_cast<std::size_t>(i)] = flip;
    RowSense sense = r.sense;
    if (flip < 0 && sense == RowSense::LE) sense = RowSense::GE;
    else if (flip < 0 && sense == RowSense::GE) sense = RowSense::LE;
    for (int j = 0; j < lp.n; ++j) {
      double v = flip * r.a[static_cast<std::size_t>(j)];
      tab.at(i, col_of_var[static_cast<std::size_t>(j)]) = v;
      if (is_free[static_cast<std::size_t>(j)])
        tab.at(i, col_of_var[static_cast<std::size_t>(j)] + 1) = -v;
    }
    tab.b[static_cast<std::size_t>(i)] = flip * r.b;
    if (r.sense != RowSense::EQ) {
      tab.at(i, slack_base + si) = sense == RowSense::LE ? 1.0 : -1.0;
      ++si;
    }
  }

  // Phase 1: artificial variables where no ready-made basic column exists.
  // A LE-standardized row (slack +1, b >= 0) starts basic on its slack.
  std::vector<int> basis(static_cast<std::size_t>(m), -1);
  std::vector<int> artificial_rows;
  si = 0;
  for (int i = 0; i < m; ++i) {
    const auto& r = lp.rows[static_cast<std::size_t>(i)];
    RowSense sense = r.sense;
    if (row_flip[static_cast<std::size_t>(i)] < 0) {
      if (sense == RowSense::LE) sense = RowSense::GE;
      else if (sense == RowSense::GE) sense = RowSense::LE;
    }
    if (r.sense != RowSense::EQ) {
      if (sense == RowSense::LE) basis[static_cast<std::size_t>(i)] = slack_base + si;
      ++si;
    }
    if (basis[static_cast<std::size_t>(i)] < 0) artificial_rows.push_back(i);
  }

  int iters = 0;
  const int iter_cap = 50000 + 200 * (m + ncols);
  LPResult out;

  // Work tableau for phase 2; if artificials are needed it is the extended
  // tableau (zero-cost artificial columns stay but can never re-enter: a
  // leftover basic artificial sits at value 0 in a row that is zero on every
  // real column, so it is never chosen as a pivot row).
  Tableau work = tab;
  Vec cost2 = cost;

  if (!artificial_rows.empty()) {
    int nart = static_cast<int>(artificial_rows.size());
    Tableau t1;
    t1.m = m;
    t1.n = ncols + nart;
    t1.A.assign(static_cast<std::size_t>(m) * t1.n, 0.0);
    t1.b = tab.b;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < ncols; ++j) t1.at(i, j) = tab.at(i, j);
    Vec cost1(static_cast<std::size_t>(t1.n), 0.0);
    for (int k = 0; k < nart; ++k) {
      t1.at(artificial_rows[static_cast<std::size_t>(k)], ncols + k) = 1.0;
      cost1[static_cast<std::size_t>(ncols + k)] = 1.0;
      basis[static_cast<std::size_t>(artificial_rows[static_cast<std::size_t>(k)])] =
          ncols + k;
    }
    LPStatus s1 = simplex_phase(t1, basis, cost1, t1.n, iter_cap, iters);
    if (s1 == LPStatus::IterLimit) {
      out.status = s1;
      return out;
    }
    double art_sum = 0.0;
    for (int i = 0; i < m; ++i)
      if (basis[static_cast<std::size_t>(i)] >= ncols)
        art_sum += t1.b[static_cast<std::size_t>(i)];
    if (art_sum > 1e-7) {
      out.status = LPStatus::Infeasible;
      out.iterations = iters;
      return out;
    }
    // Pivot remaining (degenerate) artificials out where possible.
    for (int i = 0; i < m; ++i) {
      if (basis[static_cast<std::size_t>(i)] < ncols) continue;
      int enter = -1;
      for (int j = 0; j < ncols; ++j)
        if (std::abs(t1.at(i, j)) > kPivTol) {
          enter = j;
          break;
        }
      if (enter < 0) continue;  // redundant row; artificial stays basic at 0
      double piv = t1.at(i, enter);
      for (int j = 0; j < t1.n; ++j) t1.at(i, j) /= piv;
      t1.b[static_cast<std::size_t>(i)] /= piv;
      for (int r2 = 0; r2 < m; ++r2) {
        if (r2 == i) continue;
        double f = t1.at(r2, enter);
        if (f == 0.0) continue;
        for (int j = 0; j < t1.n; ++j) t1.at(r2, j) -= f * t1.at(i, j);
        t1.b[static_cast<std::size_t>(r2)] -= f * t1.b[static_cast<std::size_t>(i)];
      }
      basis[static_cast<std::size_t>(i)] = enter;
    }
    work = std::move(t1);
    cost2.assign(static_cast<std::size_t>(work.n), 0.0);
    for (int j = 0; j < ncols; ++j)
      cost2[static_cast<std::size_t>(j)] = cost[static_cast<std::size_t>(j)];
  }

  LPStatus s2 = simplex_phase(work, basis, cost2, ncols, iter_cap, iters);
  out.iterations = iters;
  if (s2 != LPStatus::Optimal) {
    out.status = s2;
    return out;
  }

  // Recover primal solution.
  Vec z(static_cast<std::size_t>(ncols), 0.0);
  for (int i = 0; i < m; ++i)
    if (basis[static_cast<std::size_t>(i)] >= 0 &&
        basis[static_cast<std::size_t>(i)] < ncols)
      z[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])] =
          work.b[static_cast<std::size_t>(i)];
  out.x.assign(static_cast<std::size_t>(lp.n), 0.0);
  for (int j = 0; j < lp.n; ++j) {
    double v = z[static_cast<std::size_t>(col_of_var[static_cast<std::size_t>(j)])];
    if (is_free[static_cast<std::size_t>(j)])
      v -= z[static_cast<std::size_t>(col_of_var[static_cast<std::size_t>(j)] + 1)];
    out.x[static_cast<std::size_t>(j)] = v;
  }

  double val = 0.0;
  for (int j = 0; j < lp.n; ++j)
    val += lp.c[static_cast<std::size_t>(j)] * out.x[static_cast<std::size_t>(j)];
  out.value = val;
  out.status = LPStatus::Optimal;

  // Duals: solve B^T y = cB over the ORIGINAL standardized system; we
  // reconstruct the basis columns from the input (the tableau is reduced).
  {
    std::vector<Vec> bcols;
    Vec cb;
    for (int i = 0; i < m; ++i) {
      int bj = basis[static_cast<std::size_t>(i)];
      Vec col(static_cast<std::size_t>(m), 0.0);
      if (bj >= 0 && bj < ncols) {
        // Rebuild the standardized column bj.
        int sj = 0;
        for (int r2 = 0; r2 < m; ++r2) {
          const auto& rr = lp.rows[static_cast<std::size_t>(r2)];
          double flip = row_flip[static_cast<std::size_t>(r2)];
          // structural part
          double v = 0.0;
          for (int j = 0; j < lp.n; ++j) {
            int cj = col_of_var[static_cast<std::size_t>(j)];
            if (bj == cj) v = flip * rr.a[static_cast<std::size_t>(j)];
            if (is_free[static_cast<std::size_t>(j)] && bj == cj + 1)
              v = -flip * rr.a[static_cast<std::size_t>(j)];
          }
          col[static_cast<std::size_t>(r2)] = v;
          (void)sj;
        }
        // slack part
        if (bj >= slack_base) {
          int want = bj - slack_base;
          int k = 0;
          for (int r2 = 0; r2 < m; ++r2) {
            const auto& rr = lp.rows[static_cast<std::size_t>(r2)];
            if (rr.sense == RowSense::EQ) continue;
            if (k == want) {
              RowSense sense = rr.sense;
              if (row_flip[static_cast<std::size_t>(r2)] < 0)
                sense = sense == RowSense::LE ? RowSense::GE : RowSense::LE;
              col[static_cast<std::size_t>(r2)] = sense == RowSense::LE ? 1.0 : -1.0;
              break;
            }
            ++k;
          }
        }
        cb.push_back(bj < static_cast<int>(cost.size())
                         ? cost[static_cast<std::size_t>(bj)]
                         : 0.0);
      } else {
        cb.push_back(0.0);
      }
      bcols.push_back(std::move(col));
    }
    Vec y = m > 0 ? solve_transposed(bcols, cb) : Vec{};
    // Undo the row flips and the objective sign so the multipliers refer to
    // the rows exactly as given.
    out.dual.assign(static_cast<std::size_t>(m), 0.0);
    for (int i = 0; i < m; ++i)
      out.dual[static_cast<std::size_t>(i)] =
          sign * row_flip[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
  }

  out.row_activity.assign(static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < m; ++i)
    out.row_activity[static_cast<std::size_t>(i)] =
        dot(lp.rows[static_cast<std::size_t>(i)].a, out.x);
  return out;
}

}  // namespace vecdual
