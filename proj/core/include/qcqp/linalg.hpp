#pragma once

#include <stdexcept>

#include "qcqp/instance.hpp"

namespace qcqp::linalg {

struct NotPositiveDefiniteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EigenDecomposition {
  Vector eigenvalues;   // sorted descending
  Matrix eigenvectors;  // columns match eigenvalues, orthonormal
};

// Cyclic Jacobi rotations on a dense symmetric matrix. Eigenvalues come back
// in descending order with matching eigenvector columns. Throws
// ConvergenceError if the off-diagonal mass has not vanished after the
// rotation budget (100 * n^2 rotations), which no finite input reached in
// testing.
EigenDecomposition eig_sym(const Matrix& a);

// Count of eigenvalues with |lambda| > rel_tol * max|lambda|. Zero matrix
// has rank 0.
int numeric_rank(const Matrix& a, double rel_tol = 1e-8);
int numeric_rank(const Vector& eigenvalues, double rel_tol = 1e-8);

// Eigenvalues below -1e-9 * max(1, |lambda_max|) count as negative. Input is
// a descending eigenvalue vector.
int count_negative_eigenvalues(const Vector& eigenvalues);

// Lower-triangular L with a = L L'. A pivot at or below
// 1e-12 * trace(a) / n fails as not positive definite.
Matrix cholesky_pd(const Matrix& a);

// Solve a x = rhs for symmetric positive definite a via Cholesky.
Vector pd_solve(const Matrix& a, const Vector& rhs);
Matrix pd_solve(const Matrix& a, const Matrix& rhs);

}  // namespace qcqp::linalg
