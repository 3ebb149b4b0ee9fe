#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qcqp/linalg.hpp"
#include "qcqp/rng.hpp"

using namespace qcqp;
using namespace qcqp::linalg;

namespace {

Matrix random_symmetric(RngStream& r, int n, double lo = -5, double hi = 5) {
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double v = r.uniform(lo, hi);
      a(i, j) = v;
      a(j, i) = v;
    }
  return a;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("diagonal matrix eigensystem is exact") {
  Matrix a = Matrix::Zero(4, 4);
  a.diagonal() << 3.0, -1.0, 7.0, 0.5;
  auto ed = eig_sym(a);
  CHECK(ed.eigenvalues[0] == doctest::Approx(7.0));
  CHECK(ed.eigenvalues[1] == doctest::Approx(3.0));
  CHECK(ed.eigenvalues[2] == doctest::Approx(0.5));
  CHECK(ed.eigenvalues[3] == doctest::Approx(-1.0));
  // Columns must be signed unit vectors hitting the right diagonal slots.
  Matrix recon = ed.eigenvectors *
                 ed.eigenvalues.asDiagonal() *
                 ed.eigenvectors.transpose();
  CHECK((recon - a).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("two by two analytic case") {
  Matrix a(2, 2);
  a << 2, 1, 1, 2;
  auto ed = eig_sym(a);
  CHECK(ed.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(ed.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Vector v0 = ed.eigenvectors.col(0);
  CHECK(std::abs(std::abs(v0[0]) - inv_sqrt2) < 1e-12);
  CHECK(std::abs(v0[0] - v0[1]) < 1e-12);  // same sign components
}

TEST_CASE("reconstruction and orthogonality on random inputs") {
  RngStream r(21, 0);
  for (int rep = 0; rep < 60; ++rep) {
    int n = static_cast<int>(r.uniform_int(1, 12));
    Matrix a = random_symmetric(r, n);
    auto ed = eig_sym(a);
    for (int i = 0; i + 1 < n; ++i)
      CHECK(ed.eigenvalues[i] >= ed.eigenvalues[i + 1]);
    Matrix q = ed.eigenvectors;
    double orth = (q.transpose() * q - Matrix::Identity(n, n))
                      .cwiseAbs().maxCoeff();
    CHECK(orth <= 1e-10);
    Matrix recon = q * ed.eigenvalues.asDiagonal() * q.transpose();
    double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    CHECK((recon - a).cwiseAbs().maxCoeff() <= 1e-8 * scale);
  }
}

TEST_CASE("permutation leaves the spectrum unchanged") {
  RngStream r(22, 0);
  for (int rep = 0; rep < 20; ++rep) {
    int n = static_cast<int>(r.uniform_int(2, 9));
    Matrix a = random_symmetric(r, n);
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    r.shuffle(perm);
    Matrix p = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) p(i, perm[i]) = 1.0;
    Matrix b = p * a * p.transpose();
    auto ea = eig_sym(a), eb = eig_sym(b);
    for (int i = 0; i < n; ++i)
      CHECK(std::abs(ea.eigenvalues[i] - eb.eigenvalues[i]) < 1e-8);
  }
}

TEST_CASE("numeric rank") {
  RngStream r(23, 0);
  Vector v(5);
  for (int i = 0; i < 5; ++i) v[i] = r.uniform(-2, 2);
  Matrix outer = v * v.transpose();
  CHECK(numeric_rank(outer) == 1);

  Vector w(5);
  for (int i = 0; i < 5; ++i) w[i] = r.uniform(-2, 2);
  CHECK(numeric_rank(Matrix(outer + w * w.transpose())) == 2);
  CHECK(numeric_rank(Matrix(Matrix::Zero(4, 4))) == 0);
  CHECK(numeric_rank(Matrix(Matrix::Identity(6, 6))) == 6);
  // Tiny but dominant-relative entries still count.
  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 1e-6, 1e-7, 0.0;
  CHECK(numeric_rank(d) == 2);
}

TEST_CASE("negative eigenvalue threshold") {
  Vector evs(3);
  evs << 1.0, -1e-12, -1.0;
  CHECK(count_negative_eigenvalues(evs) == 1);
  evs << 2e9, -1.5, -2.0;  // threshold scales with lambda_max
  CHECK(count_negative_eigenvalues(evs) == 0);
  evs << 1.0, -2e-9, -3e-9;
  CHECK(count_negative_eigenvalues(evs) == 2);
}

TEST_CASE("cholesky and pd_solve") {
  RngStream r(24, 0);
  for (int rep = 0; rep < 30; ++rep) {
    int n = static_cast<int>(r.uniform_int(1, 10));
    Matrix g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = r.normal();
    Matrix a = g * g.transpose() + Matrix::Identity(n, n) * 0.1;
    Matrix l = cholesky_pd(a);
    CHECK((l * l.transpose() - a).cwiseAbs().maxCoeff() < 1e-10 * std::max(1.0, a.cwiseAbs().maxCoeff()));
    Vector rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = r.uniform(-3, 3);
    Vector x = pd_solve(a, rhs);
    CHECK((a * x - rhs).cwiseAbs().maxCoeff() <
          1e-8 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("pd_solve rejects non positive definite inputs") {
  Matrix neg = -Matrix::Identity(3, 3);
  CHECK_THROWS_AS(cholesky_pd(neg), NotPositiveDefiniteError);
  Matrix ones = Matrix::Ones(3, 3);  // singular
  CHECK_THROWS_AS(cholesky_pd(ones), NotPositiveDefiniteError);
  Matrix indef(2, 2);
  indef << 1, 2, 2, 1;
  CHECK_THROWS_AS(pd_solve(indef, Vector(Vector::Ones(2))),
                  NotPositiveDefiniteError);
}

}  // TEST_SUITE
