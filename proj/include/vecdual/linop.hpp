#pragma once

#include "vecdual/common.hpp"

namespace vecdual {

// Dense linear operator R^cols -> R^rows, row-major storage.
struct LinOp {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  LinOp() = default;
  LinOp(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {
    require(r >= 0 && c >= 0, "LinOp: negative shape");
  }

  static LinOp zero(int r, int c) { return LinOp(r, c); }

  static LinOp identity(int n) {
    LinOp m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

  static LinOp from_rows(const std::vector<Vec>& rows_in) {
    require(!rows_in.empty(), "LinOp: empty row list");
    LinOp m(static_cast<int>(rows_in.size()),
            static_cast<int>(rows_in[0].size()));
    for (int i = 0; i < m.rows; ++i) {
      require_dim(rows_in[static_cast<std::size_t>(i)],
                  static_cast<std::size_t>(m.cols), "LinOp row");
      for (int j = 0; j < m.cols; ++j)
        m.at(i, j) = rows_in[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return m;
  }

  // 1 x n operator (a scalarizing functional).
  static LinOp row(const Vec& r) { return from_rows({r}); }

  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  Vec row_vec(int i) const {
    Vec r(static_cast<std::size_t>(cols));
    for (int j = 0; j < cols; ++j) r[static_cast<std::size_t>(j)] = at(i, j);
    return r;
  }

  Vec apply(const Vec& x) const {
    require_dim(x, static_cast<std::size_t>(cols), "LinOp::apply");
    Vec y(static_cast<std::size_t>(rows), 0.0);
    for (int i = 0; i < rows; ++i) {
      double s = 0.0;
      for (int j = 0; j < cols; ++j) s += at(i, j) * x[static_cast<std::size_t>(j)];
      y[static_cast<std::size_t>(i)] = s;
    }
    return y;
  }

  friend LinOp operator+(const LinOp& l, const LinOp& r) {
    require(l.rows == r.rows && l.cols == r.cols, "LinOp: shape mismatch in +");
    LinOp m(l.rows, l.cols);
    for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i] = l.a[i] + r.a[i];
    return m;
  }

  friend LinOp operator-(const LinOp& l, const LinOp& r) {
    require(l.rows == r.rows && l.cols == r.cols, "LinOp: shape mismatch in -");
    LinOp m(l.rows, l.cols);
    for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i] = l.a[i] - r.a[i];
    return m;
  }

  LinOp operator-() const {
    LinOp m(rows, cols);
    for (std::size_t i = 0; i < a.size(); ++i) m.a[i] = -a[i];
    return m;
  }

  // [A | B] acting on concatenated inputs.
  static LinOp hstack(const LinOp& l, const LinOp& r) {
    require(l.rows == r.rows, "LinOp::hstack: row mismatch");
    LinOp m(l.rows, l.cols + r.cols);
    for (int i = 0; i < l.rows; ++i) {
      for (int j = 0; j < l.cols; ++j) m.at(i, j) = l.at(i, j);
      for (int j = 0; j < r.cols; ++j) m.at(i, l.cols + j) = r.at(i, j);
    }
    return m;
  }

  LinOp transpose() const {
    LinOp m(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m.at(j, i) = at(i, j);
    return m;
  }

  bool approx_equal(const LinOp& o, double tol = tol_strict) const {
    if (rows != o.rows || cols != o.cols) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!vecdual::approx_eq(a[i], o.a[i], tol)) return false;
    return true;
  }

  bool lex_less(const LinOp& o) const {
    if (rows != o.rows) return rows < o.rows;
    if (cols != o.cols) return cols < o.cols;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!vecdual::approx_eq(a[i], o.a[i])) return a[i] < o.a[i];
    return false;
  }
};

}  // namespace vecdual
