#pragma once

#include <vector>

namespace smash {

using Matrix = std::vector<std::vector<double>>;

// Solve A x = b by Gaussian elimination with partial pivoting. A is square.
std::vector<double> solve_dense(Matrix a, std::vector<double> b);

// Inverse of a square matrix, same elimination.
Matrix invert_dense(const Matrix& a);

Matrix mat_mul(const Matrix& a, const Matrix& b);
std::vector<double> vec_mat(const std::vector<double>& v, const Matrix& m);

}  // namespace smash
