#include "vecdual/linalg.hpp"

#include <Eigen/Dense>

namespace vecdual {

namespace {

Eigen::MatrixXd to_eigen(const std::vector<Vec>& rows) {
  if (rows.empty()) return Eigen::MatrixXd(0, 0);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require_dim(rows[i], rows[0].size(), "matrix row");
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return m;
}

}  // namespace

int matrix_rank(const std::vector<Vec>& rows, double tol) {
  if (rows.empty() || rows[0].empty()) return 0;
  Eigen::MatrixXd m = to_eigen(rows);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  double thresh = tol * std::max(1.0, svd.singularValues().size() > 0
                                          ? svd.singularValues()(0)
                                          : 0.0);
  int r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > thresh) ++r;
  return r;
}

std::vector<Vec> nullspace(const std::vector<Vec>& rows, double tol) {
  if (rows.empty()) return {};
  std::size_t n = rows[0].size();
  Eigen::MatrixXd m = to_eigen(rows);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  double smax = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
  double thresh = tol * std::max(1.0, smax);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > thresh) ++rank;
  std::vector<Vec> basis;
  for (Eigen::Index j = rank; j < static_cast<Eigen::Index>(n); ++j) {
    Vec v(n);
    for (std::size_t i = 0; i < n; ++i)
      v[i] = svd.matrixV()(static_cast<Eigen::Index>(i), j);
    basis.push_back(std::move(v));
  }
  return basis;
}

Vec solve_square(const std::vector<Vec>& rows, const Vec& b) {
  require(!rows.empty() && rows.size() == rows[0].size() && rows.size() == b.size(),
          "solve_square: need square system");
  Eigen::MatrixXd m = to_eigen(rows);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(b.size()));
  for (std::size_t i = 0; i < b.size(); ++i)
    rhs(static_cast<Eigen::Index>(i)) = b[i];
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (!lu.isInvertible()) throw std::runtime_error("solve_square: singular matrix");
  Eigen::VectorXd x = lu.solve(rhs);
  Vec out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    out[i] = x(static_cast<Eigen::Index>(i));
  return out;
}

bool in_span(const std::vector<Vec>& basis, const Vec& v, double tol) {
  if (norm_inf(v) <= tol) return true;
  if (basis.empty()) return false;
  std::vector<Vec> aug = basis;
  aug.push_back(v);
  return matrix_rank(basis, tol) == matrix_rank(aug, tol);
}

}  // namespace vecdual
