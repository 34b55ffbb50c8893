#pragma once

#include <vector>

#include <Eigen/Dense>

namespace fnets::lp {

enum class RowSense { LessEqual, GreaterEqual, Equal };

/// minimise cost' x  subject to  A x (sense) rhs,  x >= 0.
struct LinearProgram {
  Eigen::VectorXd cost;
  Eigen::MatrixXd A;
  Eigen::VectorXd rhs;
  std::vector<RowSense> sense;
};

struct LpSolution {
  Eigen::VectorXd x;
  double objective = 0.0;
  int iterations = 0;
};

/// Dense two-phase primal simplex on the standard-form tableau.
///
/// Pricing is Dantzig's most-negative reduced cost; after a run of
/// degenerate pivots the solver switches to Bland's smallest-index rule for
/// both entering and leaving variables, which rules out cycling. The final
/// basic solution is recomputed from the original data by an LU solve of the
/// basis system. Throws SolverError on infeasibility, unboundedness or when
/// the pivot cap is hit.
LpSolution solve_simplex(const LinearProgram& lp);

/// min |m|_1 subject to |(G m - target)_i| <= width_i for every row i,
/// via the split m = m+ - m-, both non-negative.
Eigen::VectorXd l1_min_box(const Eigen::MatrixXd& G, const Eigen::VectorXd& target,
                           const Eigen::VectorXd& width);

}  // namespace fnets::lp
