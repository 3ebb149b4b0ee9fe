#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qcqp/instance.hpp"

namespace qcqp::relax {

// Thrown when an ellipsoidal constraint x'Ax + 2b'x + c <= 0 with A positive
// definite has no interior (the quadratic has no real sublevel set).
class EmptyEllipsoidError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class RowSense { LE, EQ };

// One scalar linear constraint coeffs'v {<=,=} rhs over the program's
// variable vector v.
struct LinearRow {
  Vector coeffs;
  double rhs = 0.0;
  RowSense sense = RowSense::LE;
  std::string tag;
};

// Linear program over v = x (lifted == false), or over v = (x, vech(X))
// (lifted == true) where vech stacks X_ij for 1 <= i <= j <= n row by row,
// optionally with the side condition [[X, x], [x', 1]] psd.
struct ConicProgram {
  int n = 0;
  bool lifted = false;
  bool psd_block = false;
  Vector obj;
  double obj_constant = 0.0;
  std::vector<LinearRow> rows;
  Vector lb;
  Vector ub;

  int num_vars() const { return lifted ? n + n * (n + 1) / 2 : n; }
  // Index of X_ij (i <= j) inside v.
  int lift_index(int i, int j) const { return n + i * n - i * (i - 1) / 2 + (j - i); }
};

struct DerivedBounds {
  Vector l;
  Vector u;
  Vector center;  // -A^{-1} b
  Vector delta;   // half-widths, u - center
};

// Bounds of the axis-aligned box enclosing {x : x'Ax + 2b'x + c <= 0} for
// positive definite A.
DerivedBounds derive_artificial_bounds(const Matrix& A, const Vector& b, double c);

// Index of the last constraint k in 1..m whose matrix passes the strict
// convexity test lambda_min > 1e-8 * max(1, |lambda_max|), or -1 if none.
int find_bounding_constraint(const QcqpInstance& inst);

// McCormick linear relaxation; requires finite bounds on every variable.
ConicProgram build_lp(const QcqpInstance& inst);

// Lifted relaxation with the psd side condition; bounds may be infinite.
ConicProgram build_sdp(const QcqpInstance& inst);

// build_sdp plus the diagonal chord rows X_ii <= (u_i + l_i) x_i - u_i l_i;
// requires finite bounds.
ConicProgram build_sdp_prime(const QcqpInstance& inst);

// Human-readable listing of a program, for debugging and golden tests.
std::string debug_dump(const ConicProgram& prog);

}  // namespace qcqp::relax
