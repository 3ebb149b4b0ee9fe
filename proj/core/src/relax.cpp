#include "qcqp/relax.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "qcqp/linalg.hpp"

namespace qcqp::relax {

namespace {

void check_finite_bounds(const QcqpInstance& inst, const char* what) {
  for (int i = 0; i < inst.n; ++i) {
    if (!std::isfinite(inst.l[i]) || !std::isfinite(inst.u[i])) {
      std::ostringstream os;
      os << what << " needs finite variable bounds, but bound " << i
         << " is infinite; derive artificial bounds first";
      throw PreconditionError(os.str());
    }
  }
}

// Common skeleton: x variables with box bounds, X entries free, lifted
// objective and the m linearized constraint rows.
ConicProgram lifted_base(const QcqpInstance& inst) {
  ConicProgram prog;
  prog.n = inst.n;
  prog.lifted = true;
  const int nv = prog.num_vars();
  const double inf = std::numeric_limits<double>::infinity();

  prog.obj = Vector::Zero(nv);
  for (int i = 0; i < inst.n; ++i) prog.obj[i] = 2.0 * inst.b[0][i];
  for (int i = 0; i < inst.n; ++i)
    for (int j = i; j < inst.n; ++j)
      prog.obj[prog.lift_index(i, j)] = (i == j) ? inst.A[0](i, i) : 2.0 * inst.A[0](i, j);
  prog.obj_constant = inst.c[0];

  prog.lb = Vector::Constant(nv, -inf);
  prog.ub = Vector::Constant(nv, inf);
  prog.lb.head(inst.n) = inst.l;
  prog.ub.head(inst.n) = inst.u;

  for (int k = 1; k <= inst.m; ++k) {
    LinearRow row;
    row.coeffs = Vector::Zero(nv);
    for (int i = 0; i < inst.n; ++i) row.coeffs[i] = 2.0 * inst.b[k][i];
    for (int i = 0; i < inst.n; ++i)
      for (int j = i; j < inst.n; ++j)
        row.coeffs[prog.lift_index(i, j)] =
            (i == j) ? inst.A[k](i, i) : 2.0 * inst.A[k](i, j);
    row.rhs = -inst.c[k];
    row.sense = RowSense::LE;
    row.tag = "lin_" + std::to_string(k);
    prog.rows.push_back(std::move(row));
  }
  return prog;
}

void append_chord_rows(ConicProgram& prog, const QcqpInstance& inst) {
  const int nv = prog.num_vars();
  for (int i = 0; i < inst.n; ++i) {
    LinearRow row;
    row.coeffs = Vector::Zero(nv);
    row.coeffs[prog.lift_index(i, i)] = 1.0;
    row.coeffs[i] = -(inst.u[i] + inst.l[i]);
    row.rhs = -inst.u[i] * inst.l[i];
    row.sense = RowSense::LE;
    row.tag = "chord_" + std::to_string(i);
    prog.rows.push_back(std::move(row));
  }
}

std::string var_name(const ConicProgram& prog, int idx) {
  if (idx < prog.n) return "x" + std::to_string(idx);
  int rest = idx - prog.n;
  for (int i = 0; i < prog.n; ++i) {
    int len = prog.n - i;
    if (rest < len) return "X" + std::to_string(i) + "_" + std::to_string(i + rest);
    rest -= len;
  }
  return "v" + std::to_string(idx);
}

std::string fmt(double v) {
  if (v == std::numeric_limits<double>::infinity()) return "inf";
  if (v == -std::numeric_limits<double>::infinity()) return "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void print_linear(std::ostringstream& os, const ConicProgram& prog, const Vector& coeffs) {
  bool first = true;
  for (int i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0.0) continue;
    if (!first) os << " + ";
    os << fmt(coeffs[i]) << "*" << var_name(prog, i);
    first = false;
  }
  if (first) os << "0";
}

}  // namespace

DerivedBounds derive_artificial_bounds(const Matrix& A, const Vector& b, double c) {
  const int n = static_cast<int>(A.rows());
  Matrix eye = Matrix::Identity(n, n);
  Matrix inv = linalg::pd_solve(A, eye);
  Vector y = inv * b;
  double radius_sq = b.dot(y) - c;
  if (radius_sq < -1e-10) {
    std::ostringstream os;
    os << "constraint sublevel set is empty: b'A^-1 b - c = " << radius_sq;
    throw EmptyEllipsoidError(os.str());
  }
  radius_sq = std::max(radius_sq, 0.0);

  DerivedBounds out;
  out.center = -y;
  out.delta = Vector(n);
  for (int i = 0; i < n; ++i)
    out.delta[i] = std::sqrt(radius_sq) * std::sqrt(std::max(inv(i, i), 0.0));
  out.l = out.center - out.delta;
  out.u = out.center + out.delta;
  return out;
}

int find_bounding_constraint(const QcqpInstance& inst) {
  for (int k = inst.m; k >= 1; --k) {
    auto eig = linalg::eig_sym(inst.A[k]);
    double lo = eig.eigenvalues[inst.n - 1];
    double hi = std::abs(eig.eigenvalues[0]);
    if (lo > 1e-8 * std::max(1.0, hi)) return k;
  }
  return -1;
}

ConicProgram build_lp(const QcqpInstance& inst) {
  check_finite_bounds(inst, "LP relaxation");
  ConicProgram prog = lifted_base(inst);
  const int nv = prog.num_vars();
  const Vector& l = inst.l;
  const Vector& u = inst.u;

  for (int i = 0; i < inst.n; ++i) {
    for (int j = i; j < inst.n; ++j) {
      const int xij = prog.lift_index(i, j);
      auto tail = "_" + std::to_string(i) + "_" + std::to_string(j);
      {
        LinearRow row;  // X_ij >= l_j x_i + l_i x_j - l_i l_j
        row.coeffs = Vector::Zero(nv);
        row.coeffs[xij] = -1.0;
        row.coeffs[i] += l[j];
        row.coeffs[j] += l[i];
        row.rhs = l[i] * l[j];
        row.tag = "mc_ll" + tail;
        prog.rows.push_back(std::move(row));
      }
      {
        LinearRow row;  // X_ij <= u_j x_i + l_i x_j - l_i u_j
        row.coeffs = Vector::Zero(nv);
        row.coeffs[xij] = 1.0;
        row.coeffs[i] -= u[j];
        row.coeffs[j] -= l[i];
        row.rhs = -l[i] * u[j];
        row.tag = "mc_lu" + tail;
        prog.rows.push_back(std::move(row));
      }
      {
        LinearRow row;  // X_ij <= l_j x_i + u_i x_j - u_i l_j
        row.coeffs = Vector::Zero(nv);
        row.coeffs[xij] = 1.0;
        row.coeffs[i] -= l[j];
        row.coeffs[j] -= u[i];
        row.rhs = -u[i] * l[j];
        row.tag = "mc_ul" + tail;
        prog.rows.push_back(std::move(row));
      }
      {
        LinearRow row;  // X_ij >= u_j x_i + u_i x_j - u_i u_j
        row.coeffs = Vector::Zero(nv);
        row.coeffs[xij] = -1.0;
        row.coeffs[i] += u[j];
        row.coeffs[j] += u[i];
        row.rhs = u[i] * u[j];
        row.tag = "mc_uu" + tail;
        prog.rows.push_back(std::move(row));
      }
    }
  }
  return prog;
}

ConicProgram build_sdp(const QcqpInstance& inst) {
  ConicProgram prog = lifted_base(inst);
  prog.psd_block = true;
  return prog;
}

ConicProgram build_sdp_prime(const QcqpInstance& inst) {
  check_finite_bounds(inst, "bound-strengthened SDP relaxation");
  ConicProgram prog = build_sdp(inst);
  append_chord_rows(prog, inst);
  return prog;
}

std::string debug_dump(const ConicProgram& prog) {
  std::ostringstream os;
  os << "vars " << prog.num_vars() << " (n=" << prog.n
     << (prog.lifted ? ", lifted" : "") << ")\n";
  os << "minimize ";
  print_linear(os, prog, prog.obj);
  if (prog.obj_constant != 0.0) os << " + " << fmt(prog.obj_constant);
  os << "\n";
  for (const auto& row : prog.rows) {
    os << row.tag << ": ";
    print_linear(os, prog, row.coeffs);
    os << (row.sense == RowSense::EQ ? " = " : " <= ") << fmt(row.rhs) << "\n";
  }
  for (int i = 0; i < prog.num_vars(); ++i) {
    if (prog.lb[i] == -std::numeric_limits<double>::infinity() &&
        prog.ub[i] == std::numeric_limits<double>::infinity())
      continue;
    os << fmt(prog.lb[i]) << " <= " << var_name(prog, i) << " <= " << fmt(prog.ub[i])
       << "\n";
  }
  if (prog.psd_block) os << "psd [X x; x' 1] order " << prog.n + 1 << "\n";
  return os.str();
}

}  // namespace qcqp::relax
