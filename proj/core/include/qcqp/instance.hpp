#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace qcqp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Averages a square matrix with its transpose, writing the same computed
// value into both mirror entries so the result is bit-level symmetric.
void symmetrize(Matrix& a);

// One QCQP in the form
//   minimize    x'A[0]x + 2 b[0]'x + c[0]
//   subject to  x'A[k]x + 2 b[k]'x + c[k] <= 0   (k = 1..m)
//               l <= x <= u
// Bound entries may be +-infinity. bounds_exist records whether the bounds
// are part of the problem statement (true) or were derived from an SPD
// constraint to make the box relaxations well posed (false).
struct QcqpInstance {
  std::string instance_id;
  std::uint64_t seed = 0;
  int n = 0;
  int m = 0;
  std::vector<Matrix> A;  // m + 1 entries, A[0] is the objective
  std::vector<Vector> b;  // m + 1 entries
  std::vector<double> c;  // m + 1 entries
  Vector l, u;
  bool bounds_exist = true;
  std::vector<std::string> family_tags;  // matrix provenance, m + 1 entries

  // Symmetrizes every A[k] in place. Generators and loaders call this once;
  // validate_instance later checks symmetry at bit level.
  void normalize();

  double objective_at(const Vector& x) const;
  // k in 1..m; value of the k-th constraint function at x.
  double constraint_at(int k, const Vector& x) const;
  // All quadratic constraints within tol and x inside [l, u] within tol.
  bool is_feasible(const Vector& x, double tol = 0.0) const;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool passed() const { return violations.empty(); }
};

// Structural and numeric checks. Reports every violation found, never throws.
ValidationReport validate_instance(const QcqpInstance& inst);

}  // namespace qcqp
