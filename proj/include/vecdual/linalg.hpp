#pragma once

#include "vecdual/common.hpp"

namespace vecdual {

// Numerical rank of the matrix whose rows are `rows` (empty -> 0).
int matrix_rank(const std::vector<Vec>& rows, double tol = 1e-9);

// Orthonormal basis of the nullspace {x : R x = 0} of the row matrix.
std::vector<Vec> nullspace(const std::vector<Vec>& rows, double tol = 1e-9);

// Solve the square system A x = b (rows of A); throws if singular.
Vec solve_square(const std::vector<Vec>& rows, const Vec& b);

// True if v lies in the linear span of `basis` (within tol, relative).
bool in_span(const std::vector<Vec>& basis, const Vec& v, double tol = 1e-9);

}  // namespace vecdual
