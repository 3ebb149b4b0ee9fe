#pragma once

#include <string_view>

#include "qcqp/instance.hpp"
#include "qcqp/relax.hpp"

namespace qcqp::conic {

enum class SolveStatus { Optimal, Unbounded, Infeasible, NumericalFailure, IterationLimit };

std::string_view status_name(SolveStatus s);

struct SolverOptions {
  double tol = 1e-7;  // primal/dual residual and relative gap target
  int max_iters = 0;  // 0 picks 200 * (rows + 1)
  double step_fraction = 0.99;
  bool verbose = false;
};

// Outcome of solving one relaxation. `objective` is the dual objective at the
// returned iterate (a valid bound on the true optimum up to the residual
// tolerances), -inf for Unbounded, +inf for Infeasible.
struct RelaxationResult {
  SolveStatus status = SolveStatus::NumericalFailure;
  double objective = 0.0;
  double primal_objective = 0.0;
  Vector x;    // original variables (when Optimal)
  Matrix X;    // lifted block (when Optimal and the program is lifted)
  Vector ray;  // recession direction over program variables (when Unbounded)
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;  // relative duality gap at exit
};

// Interior-point solve of a program without a PSD block.
RelaxationResult solve_lp(const relax::ConicProgram& prog, const SolverOptions& opts = {});

// Interior-point solve of a lifted program with the [X x; x' 1] block.
RelaxationResult solve_sdp(const relax::ConicProgram& prog, const SolverOptions& opts = {});

// Dispatch on the presence of the PSD block.
RelaxationResult solve(const relax::ConicProgram& prog, const SolverOptions& opts = {});

}  // namespace qcqp::conic
