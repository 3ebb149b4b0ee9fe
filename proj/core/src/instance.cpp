#include "qcqp/instance.hpp"

#include <cmath>
#include <cstring>
#include <sstream>

namespace qcqp {

void symmetrize(Matrix& a) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double v = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = v;
      a(j, i) = v;
    }
  }
}

void QcqpInstance::normalize() {
  for (auto& a : A) symmetrize(a);
}

double QcqpInstance::objective_at(const Vector& x) const {
  return x.dot(A[0] * x) + 2.0 * b[0].dot(x) + c[0];
}

double QcqpInstance::constraint_at(int k, const Vector& x) const {
  return x.dot(A[k] * x) + 2.0 * b[k].dot(x) + c[k];
}

bool QcqpInstance::is_feasible(const Vector& x, double tol) const {
  for (int i = 0; i < n; ++i) {
    if (x[i] < l[i] - tol || x[i] > u[i] + tol) return false;
  }
  for (int k = 1; k <= m; ++k) {
    if (constraint_at(k, x) > tol) return false;
  }
  return true;
}

namespace {

bool all_finite(const Matrix& a) {
  return a.allFinite();
}

}  // namespace

ValidationReport validate_instance(const QcqpInstance& inst) {
  ValidationReport rep;
  auto fail = [&rep](const std::string& msg) { rep.violations.push_back(msg); };

  if (inst.n < 1) fail("n must be at least 1");
  if (inst.m < 1) fail("m must be at least 1");
  const std::size_t want = static_cast<std::size_t>(inst.m) + 1;
  if (inst.A.size() != want) fail("A must hold m+1 matrices");
  if (inst.b.size() != want) fail("b must hold m+1 vectors");
  if (inst.c.size() != want) fail("c must hold m+1 scalars");
  if (inst.l.size() != inst.n) fail("l must have length n");
  if (inst.u.size() != inst.n) fail("u must have length n");

  for (std::size_t k = 0; k < inst.A.size() && k < want; ++k) {
    const Matrix& a = inst.A[k];
    std::ostringstream tag;
    tag << "A[" << k << "]";
    if (a.rows() != inst.n || a.cols() != inst.n) {
      fail(tag.str() + " is not n x n");
      continue;
    }
    if (!all_finite(a)) fail(tag.str() + " has non-finite entries");
    for (int i = 0; i < inst.n; ++i) {
      for (int j = i + 1; j < inst.n; ++j) {
        // Bit-level check: construction is required to have symmetrized.
        if (std::memcmp(&a(i, j), &a(j, i), sizeof(double)) != 0) {
          std::ostringstream msg;
          msg << tag.str() << " asymmetric at (" << i << "," << j << ")";
          fail(msg.str());
        }
      }
    }
  }
  for (std::size_t k = 0; k < inst.b.size() && k < want; ++k) {
    if (inst.b[k].size() != inst.n) {
      fail("b[" + std::to_string(k) + "] has wrong length");
    } else if (!inst.b[k].allFinite()) {
      fail("b[" + std::to_string(k) + "] has non-finite entries");
    }
  }
  for (std::size_t k = 0; k < inst.c.size() && k < want; ++k) {
    if (!std::isfinite(inst.c[k])) fail("c[" + std::to_string(k) + "] is non-finite");
  }
  if (inst.l.size() == inst.n && inst.u.size() == inst.n) {
    for (int i = 0; i < inst.n; ++i) {
      if (std::isnan(inst.l[i]) || std::isnan(inst.u[i])) {
        fail("bound " + std::to_string(i) + " is NaN");
        continue;
      }
      if (std::isfinite(inst.l[i]) && std::isfinite(inst.u[i]) &&
          inst.l[i] > inst.u[i]) {
        fail("l > u at index " + std::to_string(i));
      }
    }
  }
  if (!inst.family_tags.empty() && inst.family_tags.size() != want) {
    fail("family_tags must be empty or hold m+1 entries");
  }
  return rep;
}

}  // namespace qcqp
