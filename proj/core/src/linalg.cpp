#include "qcqp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qcqp::linalg {

namespace {

double offdiag_norm(const Matrix& s) {
  double acc = 0.0;
  const Eigen::Index n = s.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) acc += s(i, j) * s(i, j);
  return std::sqrt(2.0 * acc);
}

}  // namespace

EigenDecomposition eig_sym(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eig_sym: not square");
  const int n = static_cast<int>(a.rows());
  Matrix s = a;
  Matrix q = Matrix::Identity(n, n);

  if (n > 1) {
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    const double stop = 1e-15 * scale * n;
    const long rotation_budget = 100L * n * n;
    long rotations = 0;
    while (offdiag_norm(s) > stop) {
      bool rotated = false;
      for (int i = 0; i < n - 1; ++i) {
        for (int j = i + 1; j < n; ++j) {
          const double apq = s(i, j);
          if (std::abs(apq) <= 1e-18 * scale) continue;
          if (++rotations > rotation_budget)
            throw ConvergenceError("eig_sym: rotation budget exhausted");
          rotated = true;
          const double theta = (s(j, j) - s(i, i)) / (2.0 * apq);
          double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
          const double c = 1.0 / std::sqrt(t * t + 1.0);
          const double sn = t * c;
          const double tau = sn / (1.0 + c);

          const double sii = s(i, i), sjj = s(j, j);
          s(i, i) = sii - t * apq;
          s(j, j) = sjj + t * apq;
          s(i, j) = 0.0;
          s(j, i) = 0.0;
          for (int k = 0; k < n; ++k) {
            if (k == i || k == j) continue;
            const double ski = s(k, i), skj = s(k, j);
            s(k, i) = ski - sn * (skj + tau * ski);
            s(i, k) = s(k, i);
            s(k, j) = skj + sn * (ski - tau * skj);
            s(j, k) = s(k, j);
          }
          for (int k = 0; k < n; ++k) {
            const double qki = q(k, i), qkj = q(k, j);
            q(k, i) = qki - sn * (qkj + tau * qki);
            q(k, j) = qkj + sn * (qki - tau * qkj);
          }
        }
      }
      if (!rotated) break;  // everything below the skip threshold
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&s](int x, int y) { return s(x, x) > s(y, y); });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    out.eigenvalues[k] = s(order[k], order[k]);
    out.eigenvectors.col(k) = q.col(order[k]);
  }
  return out;
}

int numeric_rank(const Vector& eigenvalues, double rel_tol) {
  if (eigenvalues.size() == 0) return 0;
  const double top = eigenvalues.cwiseAbs().maxCoeff();
  if (top == 0.0) return 0;
  const double cut = rel_tol * top;
  int rank = 0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    if (std::abs(eigenvalues[i]) > cut) ++rank;
  return rank;
}

int numeric_rank(const Matrix& a, double rel_tol) {
  return numeric_rank(eig_sym(a).eigenvalues, rel_tol);
}

int count_negative_eigenvalues(const Vector& eigenvalues) {
  if (eigenvalues.size() == 0) return 0;
  const double lmax = eigenvalues[0];  // descending order
  const double cut = -1e-9 * std::max(1.0, std::abs(lmax));
  int count = 0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    if (eigenvalues[i] < cut) ++count;
  return count;
}

Matrix cholesky_pd(const Matrix& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("cholesky_pd: not square");
  const int n = static_cast<int>(a.rows());
  const double pivot_floor = 1e-12 * a.trace() / n;
  Matrix l = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    double d = a(j, j);
    for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (d <= pivot_floor)
      throw NotPositiveDefiniteError("cholesky_pd: pivot " +
                                     std::to_string(d) + " at column " +
                                     std::to_string(j));
    l(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      double v = a(i, j);
      for (int k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
      l(i, j) = v / l(j, j);
    }
  }
  return l;
}

Matrix pd_solve(const Matrix& a, const Matrix& rhs) {
  const Matrix l = cholesky_pd(a);
  // Forward then backward triangular solves.
  Matrix y = l.triangularView<Eigen::Lower>().solve(rhs);
  return l.transpose().triangularView<Eigen::Upper>().solve(y);
}

Vector pd_solve(const Matrix& a, const Vector& rhs) {
  Matrix r = pd_solve(a, Matrix(rhs));
  return Vector(r.col(0));
}

}  // namespace qcqp::linalg
