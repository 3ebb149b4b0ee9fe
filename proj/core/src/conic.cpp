#include "qcqp/conic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

// Homogeneous self-dual embedding solved with a Nesterov-Todd scaled
// Mehrotra predictor-corrector. The program is rewritten as
//   min c'u  s.t.  A u = b,  G u + s = h,  s in K,
// K a product of a nonnegative orthant (inequality rows plus finite bounds)
// and at most one semidefinite block stored in scaled-vector (svec) form.

namespace qcqp::conic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kSqrt2 = std::sqrt(2.0);

using LdMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using LdVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

int svec_size(int q) { return q * (q + 1) / 2; }

// Row-major upper-triangle position of entry (a, b), a <= b.
int svec_index(int a, int b, int q) { return a * q - a * (a - 1) / 2 + (b - a); }

template <typename Mat>
Eigen::Matrix<typename Mat::Scalar, Eigen::Dynamic, 1> svec(const Mat& m) {
  using Scalar = typename Mat::Scalar;
  const Scalar root2 = std::sqrt(Scalar(2));
  const int q = static_cast<int>(m.rows());
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v(svec_size(q));
  int k = 0;
  for (int i = 0; i < q; ++i) {
    v[k++] = m(i, i);
    for (int j = i + 1; j < q; ++j) v[k++] = root2 * Scalar(0.5) * (m(i, j) + m(j, i));
  }
  return v;
}

template <typename Vec>
Eigen::Matrix<typename Vec::Scalar, Eigen::Dynamic, Eigen::Dynamic> smat(const Vec& v, int q) {
  using Scalar = typename Vec::Scalar;
  const Scalar half = Scalar(1) / std::sqrt(Scalar(2));
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m(q, q);
  int k = 0;
  for (int i = 0; i < q; ++i) {
    m(i, i) = v[k++];
    for (int j = i + 1; j < q; ++j) {
      m(i, j) = half * v[k];
      m(j, i) = half * v[k];
      ++k;
    }
  }
  return m;
}

// Standard-form data. The semidefinite block is the matrix
//   M(u) = sum_j u_j H_j + E_nn,
// where H_j has one or two unit entries, so each column of its svec form has
// a single nonzero: variable j hits svec row prow[j] with weight -pfac[j].
struct Embedding {
  int nv = 0;
  int p_eq = 0;
  int p_lp = 0;
  int q = 0;
  int sd = 0;
  int cone = 0;
  Matrix A;
  Vector b;
  Matrix Glp;
  Vector c;
  Vector h;
  std::vector<int> prow;
  Vector pfac;

  Vector gmul(const Vector& v) const {
    Vector out = Vector::Zero(cone);
    if (p_lp > 0) out.head(p_lp).noalias() = Glp * v;
    if (q > 0)
      for (int j = 0; j < nv; ++j) out[p_lp + prow[j]] -= pfac[j] * v[j];
    return out;
  }

  Vector gtmul(const Vector& w) const {
    Vector out = Vector::Zero(nv);
    if (p_lp > 0) out.noalias() = Glp.transpose() * w.head(p_lp);
    if (q > 0)
      for (int j = 0; j < nv; ++j) out[j] -= pfac[j] * w[p_lp + prow[j]];
    return out;
  }
};

Embedding build_embedding(const relax::ConicProgram& prog) {
  Embedding em;
  em.nv = prog.num_vars();
  if (prog.obj.size() != em.nv || prog.lb.size() != em.nv || prog.ub.size() != em.nv)
    throw relax::PreconditionError("program vector sizes do not match the variable count");
  em.c = prog.obj;
  int n_le = 0;
  int n_eq = 0;
  for (const auto& row : prog.rows) {
    if (row.coeffs.size() != em.nv)
      throw relax::PreconditionError("row coefficient size does not match the variable count");
    (row.sense == relax::RowSense::EQ ? n_eq : n_le)++;
  }
  int n_bnd = 0;
  for (int i = 0; i < em.nv; ++i) {
    if (std::isfinite(prog.ub[i])) ++n_bnd;
    if (std::isfinite(prog.lb[i])) ++n_bnd;
  }
  em.p_eq = n_eq;
  em.p_lp = n_le + n_bnd;
  em.q = prog.psd_block ? prog.n + 1 : 0;
  em.sd = svec_size(em.q);
  em.cone = em.p_lp + em.sd;
  if (em.p_lp + em.q == 0)
    throw relax::PreconditionError("program has neither inequality rows nor a cone block");
  em.A = Matrix::Zero(em.p_eq, em.nv);
  em.b = Vector::Zero(em.p_eq);
  em.Glp = Matrix::Zero(em.p_lp, em.nv);
  em.h = Vector::Zero(em.cone);
  int rle = 0;
  int req = 0;
  for (const auto& row : prog.rows) {
    if (row.sense == relax::RowSense::EQ) {
      em.A.row(req) = row.coeffs.transpose();
      em.b[req] = row.rhs;
      ++req;
    } else {
      em.Glp.row(rle) = row.coeffs.transpose();
      em.h[rle] = row.rhs;
      ++rle;
    }
  }
  for (int i = 0; i < em.nv; ++i) {
    if (std::isfinite(prog.ub[i])) {
      em.Glp(rle, i) = 1.0;
      em.h[rle] = prog.ub[i];
      ++rle;
    }
    if (std::isfinite(prog.lb[i])) {
      em.Glp(rle, i) = -1.0;
      em.h[rle] = -prog.lb[i];
      ++rle;
    }
  }
  if (em.q > 0) {
    if (!prog.lifted)
      throw relax::PreconditionError("semidefinite block requires a lifted program");
    const int n = prog.n;
    em.prow.resize(em.nv);
    em.pfac = Vector::Zero(em.nv);
    for (int i = 0; i < n; ++i) {
      em.prow[i] = svec_index(i, n, em.q);
      em.pfac[i] = kSqrt2;
    }
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const int v = prog.lift_index(i, j);
        em.prow[v] = svec_index(i, j, em.q);
        em.pfac[v] = i == j ? 1.0 : kSqrt2;
      }
    em.h[em.p_lp + svec_index(n, n, em.q)] = 1.0;
  }
  return em;
}

// Nesterov-Todd scaling at (s, z). For the orthant w_i = sqrt(s_i/z_i); for
// the semidefinite block W v = svec(R' smat(v) R) with R from the Cholesky
// factors of S and Z, and the scaled point is the diagonal sigma.
struct Scaling {
  Vector d;
  Vector w;
  Vector lam;
  Matrix Ls, Lz;
  Matrix R, Rinv, P, Q;
  Vector sigma;
};

bool compute_scaling(const Embedding& em, const Vector& s, const Vector& z, Scaling& sc) {
  sc.d.resize(em.p_lp);
  sc.w.resize(em.p_lp);
  sc.lam.resize(em.p_lp);
  for (int i = 0; i < em.p_lp; ++i) {
    if (!(s[i] > 0.0) || !(z[i] > 0.0)) return false;
    sc.d[i] = z[i] / s[i];
    sc.w[i] = std::sqrt(s[i] / z[i]);
    sc.lam[i] = std::sqrt(s[i] * z[i]);
  }
  if (em.q > 0) {
    const int q = em.q;
    const Matrix S = smat(s.tail(em.sd), q);
    const Matrix Z = smat(z.tail(em.sd), q);
    Eigen::LLT<Matrix> ls(S);
    Eigen::LLT<Matrix> lz(Z);
    if (ls.info() != Eigen::Success || lz.info() != Eigen::Success) return false;
    sc.Ls = ls.matrixL();
    sc.Lz = lz.matrixL();
    const Matrix cross = sc.Lz.transpose() * sc.Ls;
    Eigen::JacobiSVD<Matrix> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
    sc.sigma = svd.singularValues();
    if (!(sc.sigma.minCoeff() > 0.0)) return false;
    const Vector rootinv = sc.sigma.cwiseSqrt().cwiseInverse();
    sc.R.noalias() = sc.Ls * svd.matrixV() * rootinv.asDiagonal();
    sc.Rinv.noalias() = rootinv.asDiagonal() * svd.matrixU().transpose() * sc.Lz.transpose();
    sc.P.noalias() = sc.Rinv.transpose() * sc.Rinv;
    sc.Q.noalias() = sc.R * sc.R.transpose();
  }
  return true;
}

// Reduced KKT solver. Eliminating ds and dz leaves the normal matrix
// N = G' (W'W)^{-1} G, and equality rows are handled through the small Schur
// complement A N^{-1} A'. Near convergence N's conditioning grows like the
// inverse squared barrier parameter, which overruns double precision right
// around the target tolerance, so the whole reduced solve runs in extended
// precision with iterative refinement against the exact operator.
struct KktSolver {
  const Embedding& em;
  const Scaling& sc;
  LdMatrix glp, aeq, tinv, q2;
  LdVector d;
  Eigen::LDLT<LdMatrix> nf;
  Eigen::LDLT<LdMatrix> schur;

  KktSolver(const Embedding& e, const Scaling& s) : em(e), sc(s) {}

  LdVector gmul(const LdVector& v) const {
    LdVector out = LdVector::Zero(em.cone);
    if (em.p_lp > 0) out.head(em.p_lp).noalias() = glp * v;
    if (em.q > 0)
      for (int j = 0; j < em.nv; ++j) out[em.p_lp + em.prow[j]] -= (long double)em.pfac[j] * v[j];
    return out;
  }

  LdVector gtmul(const LdVector& w) const {
    LdVector out = LdVector::Zero(em.nv);
    if (em.p_lp > 0) out.noalias() = glp.transpose() * w.head(em.p_lp);
    if (em.q > 0)
      for (int j = 0; j < em.nv; ++j) out[j] -= (long double)em.pfac[j] * w[em.p_lp + em.prow[j]];
    return out;
  }

  LdVector winv2(const LdVector& v) const {
    LdVector out(em.cone);
    out.head(em.p_lp) = d.cwiseProduct(v.head(em.p_lp));
    if (em.q > 0) out.tail(em.sd).noalias() = tinv * v.tail(em.sd);
    return out;
  }

  LdVector w2_ld(const LdVector& v) const {
    LdVector out(em.cone);
    out.head(em.p_lp) = v.head(em.p_lp).cwiseQuotient(d);
    if (em.q > 0) out.tail(em.sd) = svec(LdMatrix(q2 * smat(v.tail(em.sd), em.q) * q2));
    return out;
  }

  Vector w2(const Vector& v) const { return w2_ld(v.cast<long double>()).cast<double>(); }

  bool factor() {
    glp = em.Glp.cast<long double>();
    aeq = em.A.cast<long double>();
    d = sc.d.cast<long double>();
    if (em.q > 0) {
      q2 = sc.Q.cast<long double>();
      const LdMatrix p2 = sc.P.cast<long double>();
      const long double root2inv = 1.0L / std::sqrt(2.0L);
      tinv.resize(em.sd, em.sd);
      LdMatrix unit(em.q, em.q);
      int col = 0;
      for (int a = 0; a < em.q; ++a)
        for (int b = a; b < em.q; ++b, ++col) {
          if (a == b) {
            unit.noalias() = p2.col(a) * p2.col(a).transpose();
          } else {
            unit.noalias() = p2.col(a) * p2.col(b).transpose();
            unit.noalias() += p2.col(b) * p2.col(a).transpose();
            unit *= root2inv;
          }
          tinv.col(col) = svec(unit);
        }
    }
    LdMatrix N = LdMatrix::Zero(em.nv, em.nv);
    if (em.p_lp > 0) {
      const LdMatrix gd = d.cwiseSqrt().asDiagonal() * glp;
      N.selfadjointView<Eigen::Lower>().rankUpdate(gd.transpose());
      N = N.selfadjointView<Eigen::Lower>();
    }
    if (em.q > 0) {
      for (int j = 0; j < em.nv; ++j)
        for (int k = 0; k < em.nv; ++k)
          N(j, k) += (long double)em.pfac[j] * em.pfac[k] * tinv(em.prow[j], em.prow[k]);
    }
    N = 0.5L * (N + N.transpose()).eval();
    nf.compute(N);
    if (nf.info() != Eigen::Success) return false;
    if (em.p_eq > 0) {
      LdMatrix S = aeq * nf.solve(aeq.transpose());
      S = 0.5L * (S + S.transpose()).eval();
      schur.compute(S);
      if (schur.info() != Eigen::Success) return false;
    }
    return true;
  }

  void raw(const LdVector& p, const LdVector& qr, const LdVector& r, LdVector& dx, LdVector& dy,
           LdVector& dz) const {
    const LdVector rhs = p + gtmul(winv2(r));
    if (em.p_eq > 0) {
      dy = schur.solve(aeq * nf.solve(rhs) - qr);
      dx = nf.solve(rhs - aeq.transpose() * dy);
    } else {
      dy.resize(0);
      dx = nf.solve(rhs);
    }
    dz = winv2(gmul(dx) - r);
  }

  void solve3(const Vector& pd, const Vector& qd, const Vector& rd, Vector& dxd, Vector& dyd,
              Vector& dzd) const {
    const LdVector p = pd.cast<long double>();
    const LdVector qr = qd.cast<long double>();
    const LdVector r = rd.cast<long double>();
    LdVector dx, dy, dz, ex, ey, ez;
    raw(p, qr, r, dx, dy, dz);
    long double prev = std::numeric_limits<long double>::infinity();
    for (int pass = 0; pass < 4; ++pass) {
      LdVector r1 = p - gtmul(dz);
      if (em.p_eq > 0) r1.noalias() -= aeq.transpose() * dy;
      const LdVector r2 = qr - aeq * dx;
      const LdVector r3 = r - gmul(dx) + w2_ld(dz);
      const long double rnorm = std::max({r1.lpNorm<Eigen::Infinity>(),
                                          em.p_eq > 0 ? r2.lpNorm<Eigen::Infinity>() : 0.0L,
                                          r3.lpNorm<Eigen::Infinity>()});
      if (!(rnorm > 1e-16L * (1.0L + p.lpNorm<Eigen::Infinity>())) || rnorm >= 0.5L * prev) break;
      prev = rnorm;
      raw(r1, r2, r3, ex, ey, ez);
      dx += ex;
      if (em.p_eq > 0) dy += ey;
      dz += ez;
    }
    dxd = dx.cast<double>();
    dyd = dy.cast<double>();
    dzd = dz.cast<double>();
  }
};

// Inverse Jordan product lambda \ d followed by W', which is the right-hand
// side the eliminated complementarity row contributes to the cone block.
Vector scaled_comp_rhs(const Embedding& em, const Scaling& sc, const Vector& dlp,
                       const Matrix& dpsd) {
  Vector out(em.cone);
  for (int i = 0; i < em.p_lp; ++i) out[i] = sc.w[i] * (dlp[i] / sc.lam[i]);
  if (em.q > 0) {
    Matrix u(em.q, em.q);
    for (int i = 0; i < em.q; ++i)
      for (int j = 0; j < em.q; ++j) u(i, j) = 2.0 * dpsd(i, j) / (sc.sigma[i] + sc.sigma[j]);
    out.tail(em.sd) = svec(sc.R * u * sc.R.transpose());
  }
  return out;
}

double psd_min_step(const Matrix& chol, const Vector& dir, int q) {
  const Matrix d = smat(dir, q);
  Matrix b = chol.triangularView<Eigen::Lower>().solve(d);
  const Matrix bt = b.transpose();
  b = chol.triangularView<Eigen::Lower>().solve(bt);
  b = 0.5 * (b + b.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(b, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_step(const Embedding& em, const Scaling& sc, const Vector& s, const Vector& z,
                const Vector& ds, const Vector& dz, double tau, double dtau, double kappa,
                double dkappa) {
  double a = kInf;
  for (int i = 0; i < em.p_lp; ++i) {
    if (ds[i] < 0.0) a = std::min(a, -s[i] / ds[i]);
    if (dz[i] < 0.0) a = std::min(a, -z[i] / dz[i]);
  }
  if (dtau < 0.0) a = std::min(a, -tau / dtau);
  if (dkappa < 0.0) a = std::min(a, -kappa / dkappa);
  if (em.q > 0) {
    const double ms = psd_min_step(sc.Ls, ds.tail(em.sd), em.q);
    if (ms < 0.0) a = std::min(a, -1.0 / ms);
    const double mz = psd_min_step(sc.Lz, dz.tail(em.sd), em.q);
    if (mz < 0.0) a = std::min(a, -1.0 / mz);
  }
  return a;
}

RelaxationResult solve_impl(const relax::ConicProgram& prog, const SolverOptions& opts) {
  const Embedding em = build_embedding(prog);
  const int deg = em.p_lp + em.q;
  const int max_iters =
      opts.max_iters > 0 ? opts.max_iters : 200 * (static_cast<int>(prog.rows.size()) + em.p_lp + 1);

  Vector u = Vector::Zero(em.nv);
  Vector y = Vector::Zero(em.p_eq);
  Vector s(em.cone);
  Vector z(em.cone);
  s.head(em.p_lp).setOnes();
  if (em.q > 0) s.tail(em.sd) = svec(Matrix::Identity(em.q, em.q));
  z = s;
  double tau = 1.0;
  double kappa = 1.0;

  const double resx0 = std::max(1.0, em.c.norm());
  const double resy0 = std::max(1.0, em.b.norm());
  const double resz0 = std::max(1.0, em.h.norm());

  RelaxationResult res;
  auto fill_exit = [&](SolveStatus st, double pres, double dres, double relgap, double pcost,
                       double dcost, int iter) {
    res.status = st;
    res.iterations = iter;
    res.primal_residual = pres;
    res.dual_residual = dres;
    res.gap = relgap;
    res.primal_objective = pcost + prog.obj_constant;
    res.objective = dcost + prog.obj_constant;
  };

  double best_metric = kInf;
  int stall = 0;
  Scaling sc;

  for (int iter = 0;; ++iter) {
    Vector rx = em.gtmul(z) + em.c * tau;
    if (em.p_eq > 0) rx.noalias() += em.A.transpose() * y;
    const Vector ry = em.A * u - em.b * tau;
    const Vector rz = s + em.gmul(u) - em.h * tau;
    const double rt = kappa + em.c.dot(u) + em.b.dot(y) + em.h.dot(z);
    const double mu = (s.dot(z) + tau * kappa) / (deg + 1);

    if (!std::isfinite(mu) || !u.allFinite() || !s.allFinite() || !z.allFinite()) {
      fill_exit(SolveStatus::NumericalFailure, kInf, kInf, kInf, 0.0, 0.0, iter);
      return res;
    }

    const double pcost = em.c.dot(u) / tau;
    const double dcost = -(em.b.dot(y) + em.h.dot(z)) / tau;
    const double pres = std::max(ry.norm() / resy0, rz.norm() / resz0) / tau;
    const double dres = rx.norm() / resx0 / tau;
    const double gap_abs = s.dot(z) / (tau * tau);
    const double relgap = gap_abs / std::max(1.0, 0.5 * (std::abs(pcost) + std::abs(dcost)));

    if (opts.verbose)
      std::fprintf(stderr, "iter %3d  mu %9.2e  pres %9.2e  dres %9.2e  gap %9.2e  tau %8.2e\n",
                   iter, mu, pres, dres, relgap, tau);

    if (pres <= opts.tol && dres <= opts.tol && relgap <= opts.tol) {
      fill_exit(SolveStatus::Optimal, pres, dres, relgap, pcost, dcost, iter);
      res.x = u.head(prog.n) / tau;
      if (prog.lifted) {
        res.X.resize(prog.n, prog.n);
        for (int i = 0; i < prog.n; ++i)
          for (int j = i; j < prog.n; ++j) {
            const double v = u[prog.lift_index(i, j)] / tau;
            res.X(i, j) = v;
            res.X(j, i) = v;
          }
      }
      return res;
    }

    double unb_metric = kInf;
    const double cu = em.c.dot(u);
    if (cu < 0.0) {
      unb_metric =
          std::max((em.A * u).norm() / resy0, (em.gmul(u) + s).norm() / resz0) / (-cu);
      if (unb_metric <= opts.tol) {
        fill_exit(SolveStatus::Unbounded, pres, dres, relgap, pcost, dcost, iter);
        res.objective = -kInf;
        res.ray = u / (-cu);
        return res;
      }
    }
    double inf_metric = kInf;
    const double hzby = em.h.dot(z) + em.b.dot(y);
    if (hzby < 0.0) {
      Vector dual_res = em.gtmul(z);
      if (em.p_eq > 0) dual_res.noalias() += em.A.transpose() * y;
      inf_metric = dual_res.norm() / resx0 / (-hzby);
      if (inf_metric <= opts.tol) {
        fill_exit(SolveStatus::Infeasible, pres, dres, relgap, pcost, dcost, iter);
        res.objective = kInf;
        return res;
      }
    }

    if (iter >= max_iters) {
      fill_exit(SolveStatus::IterationLimit, pres, dres, relgap, pcost, dcost, iter);
      return res;
    }

    const double metric =
        std::min({std::max({pres, dres, relgap}), unb_metric, inf_metric});
    if (metric < 0.999 * best_metric) {
      best_metric = std::min(best_metric, metric);
      stall = 0;
    } else if (++stall >= 20) {
      fill_exit(SolveStatus::NumericalFailure, pres, dres, relgap, pcost, dcost, iter);
      return res;
    }

    if (!compute_scaling(em, s, z, sc)) {
      fill_exit(SolveStatus::NumericalFailure, pres, dres, relgap, pcost, dcost, iter);
      return res;
    }
    KktSolver kkt(em, sc);
    if (!kkt.factor()) {
      fill_exit(SolveStatus::NumericalFailure, pres, dres, relgap, pcost, dcost, iter);
      return res;
    }

    Vector x1, y1, z1;
    kkt.solve3(-em.c, em.b, em.h, x1, y1, z1);
    const double den = em.c.dot(x1) + em.b.dot(y1) + em.h.dot(z1) - kappa / tau;

    auto newton = [&](double theta, const Vector& dlp, const Matrix& dpsd, double dkap_rhs,
                      Vector& dx, Vector& dy, Vector& dz, Vector& ds, double& dtau,
                      double& dkap) {
      const Vector bzw = scaled_comp_rhs(em, sc, dlp, dpsd);
      Vector x0, y0, z0;
      kkt.solve3(-theta * rx, -theta * ry, Vector(-theta * rz - bzw), x0, y0, z0);
      const double num =
          -theta * rt - dkap_rhs / tau - (em.c.dot(x0) + em.b.dot(y0) + em.h.dot(z0));
      dtau = num / den;
      dx = x0 + dtau * x1;
      dy = y0 + dtau * y1;
      dz = z0 + dtau * z1;
      ds = bzw - kkt.w2(dz);
      dkap = (dkap_rhs - kappa * dtau) / tau;
    };

    // Predictor: pure Newton step toward complementarity zero.
    Vector dlp_aff = -sc.lam.cwiseProduct(sc.lam);
    Matrix dpsd_aff;
    if (em.q > 0) dpsd_aff = (-sc.sigma.cwiseProduct(sc.sigma)).asDiagonal();
    Vector dxa, dya, dza, dsa;
    double dtaua, dkapa;
    newton(1.0, dlp_aff, dpsd_aff, -tau * kappa, dxa, dya, dza, dsa, dtaua, dkapa);

    const double a_aff =
        std::min(1.0, max_step(em, sc, s, z, dsa, dza, tau, dtaua, kappa, dkapa));
    const double mu_aff = ((s + a_aff * dsa).dot(z + a_aff * dza) +
                           (tau + a_aff * dtaua) * (kappa + a_aff * dkapa)) /
                          (deg + 1);
    double sigma = std::pow(std::max(0.0, mu_aff / mu), 3.0);
    sigma = std::min(1.0, sigma);

    // Corrector: recenters toward sigma*mu and subtracts the Mehrotra
    // second-order term computed in the scaled space.
    Vector dlp_comb(em.p_lp);
    for (int i = 0; i < em.p_lp; ++i)
      dlp_comb[i] = -sc.lam[i] * sc.lam[i] - dsa[i] * dza[i] + sigma * mu;
    Matrix dpsd_comb;
    if (em.q > 0) {
      const Matrix dss = sc.Rinv * smat(dsa.tail(em.sd), em.q) * sc.Rinv.transpose();
      const Matrix dzs = sc.R.transpose() * smat(dza.tail(em.sd), em.q) * sc.R;
      dpsd_comb = -0.5 * (dss * dzs + dzs * dss);
      dpsd_comb -= Matrix(sc.sigma.cwiseProduct(sc.sigma).asDiagonal());
      dpsd_comb.diagonal().array() += sigma * mu;
    }
    const double dkap_comb = -tau * kappa - dtaua * dkapa + sigma * mu;

    Vector dx, dy, dz, ds;
    double dtau, dkap;
    newton(1.0 - sigma, dlp_comb, dpsd_comb, dkap_comb, dx, dy, dz, ds, dtau, dkap);

    const double a_max = max_step(em, sc, s, z, ds, dz, tau, dtau, kappa, dkap);
    if (!(a_max > 1e-13)) {
      fill_exit(SolveStatus::NumericalFailure, pres, dres, relgap, pcost, dcost, iter);
      return res;
    }
    const double alpha = std::min(1.0, opts.step_fraction * a_max);

    u += alpha * dx;
    if (em.p_eq > 0) y += alpha * dy;
    z += alpha * dz;
    s += alpha * ds;
    tau += alpha * dtau;
    kappa += alpha * dkap;
  }
}

}  // namespace

std::string_view status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::NumericalFailure: return "numerical_failure";
    case SolveStatus::IterationLimit: return "iteration_limit";
  }
  return "unknown";
}

RelaxationResult solve_lp(const relax::ConicProgram& prog, const SolverOptions& opts) {
  if (prog.psd_block)
    throw relax::PreconditionError("solve_lp requires a program without a semidefinite block");
  return solve_impl(prog, opts);
}

RelaxationResult solve_sdp(const relax::ConicProgram& prog, const SolverOptions& opts) {
  if (!prog.psd_block || !prog.lifted)
    throw relax::PreconditionError("solve_sdp requires a lifted program with its semidefinite block");
  return solve_impl(prog, opts);
}

RelaxationResult solve(const relax::ConicProgram& prog, const SolverOptions& opts) {
  return prog.psd_block ? solve_sdp(prog, opts) : solve_lp(prog, opts);
}

}  // namespace qcqp::conic
