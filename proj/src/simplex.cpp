#include "fnets/simplex.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fnets/error.hpp"

namespace fnets::lp {

namespace {

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr int kDegenerateRunBeforeBland = 50;

class Tableau {
 public:
  Tableau(RowMajorMatrix t, std::vector<Eigen::Index> basis)
      : t_(std::move(t)), basis_(std::move(basis)) {}

  Eigen::Index rows() const { return t_.rows() - 1; }
  Eigen::Index cols() const { return t_.cols() - 1; }
  RowMajorMatrix& data() { return t_; }
  const std::vector<Eigen::Index>& basis() const { return basis_; }

  // Loads the reduced-cost row for a cost vector over all tableau columns.
  void price(const Eigen::VectorXd& cost) {
    const Eigen::Index m = rows();
    auto obj = t_.row(m);
    obj.head(cols()) = cost.transpose();
    obj(cols()) = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      const double cb = cost(basis_[i]);
      if (cb != 0.0) obj -= cb * t_.row(i);
    }
  }

  void pivot(Eigen::Index r, Eigen::Index c) {
    const double piv = t_(r, c);
    t_.row(r) /= piv;
    Eigen::VectorXd column = t_.col(c);
    column(r) = 0.0;
    const Eigen::RowVectorXd prow = t_.row(r);
    t_.noalias() -= column * prow;
    t_(r, c) = 1.0;
    basis_[r] = c;
  }

  // Runs primal simplex iterations on the current cost row. `allowed[j]`
  // marks columns that may enter the basis.
  void optimise(const std::vector<bool>& allowed, int& iterations, int cap) {
    const Eigen::Index m = rows();
    const Eigen::Index n = cols();
    int degenerate_run = 0;
    while (true) {
      const bool bland = degenerate_run >= kDegenerateRunBeforeBland;
      Eigen::Index enter = -1;
      double best = -kCostTol;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (!allowed[j]) continue;
        const double rc = t_(m, j);
        if (rc < best) {
          enter = j;
          if (bland) break;
          best = rc;
        }
      }
      if (enter < 0) return;

      Eigen::Index leave = -1;
      double min_ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m; ++i) {
        const double a = t_(i, enter);
        if (a <= kPivotTol) continue;
        const double ratio = std::max(t_(i, n), 0.0) / a;
        if (leave < 0) {
          min_ratio = ratio;
          leave = i;
          continue;
        }
        const double slack = 1e-12 * std::max(1.0, std::abs(min_ratio));
        if (ratio < min_ratio - slack ||
            (ratio <= min_ratio + slack && basis_[i] < basis_[leave])) {
          if (ratio < min_ratio) min_ratio = ratio;
          leave = i;
        }
      }
      if (leave < 0) throw SolverError("simplex: problem is unbounded");

      degenerate_run = min_ratio <= 1e-12 ? degenerate_run + 1 : 0;
      pivot(leave, enter);
      if (++iterations > cap) throw SolverError("simplex: iteration limit reached");
    }
  }

 private:
  RowMajorMatrix t_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace

LpSolution solve_simplex(const LinearProgram& lp) {
  const Eigen::Index m = lp.A.rows();
  const Eigen::Index n = lp.A.cols();
  if (lp.cost.size() != n || lp.rhs.size() != m || static_cast<Eigen::Index>(lp.sense.size()) != m)
    throw DimensionError("simplex: inconsistent problem dimensions");
  if (!lp.A.allFinite() || !lp.rhs.allFinite() || !lp.cost.allFinite())
    throw NumericalError("simplex: non-finite problem data");

  // Normalise to non-negative right-hand sides.
  Eigen::MatrixXd a = lp.A;
  Eigen::VectorXd b = lp.rhs;
  std::vector<RowSense> sense = lp.sense;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (b(i) < 0.0) {
      a.row(i) *= -1.0;
      b(i) = -b(i);
      if (sense[i] == RowSense::LessEqual)
        sense[i] = RowSense::GreaterEqual;
      else if (sense[i] == RowSense::GreaterEqual)
        sense[i] = RowSense::LessEqual;
    }
  }

  Eigen::Index n_slack = 0, n_art = 0;
  for (auto s : sense) {
    if (s != RowSense::Equal) ++n_slack;
    if (s != RowSense::LessEqual) ++n_art;
  }
  const Eigen::Index art_begin = n + n_slack;
  const Eigen::Index total = art_begin + n_art;

  RowMajorMatrix t = RowMajorMatrix::Zero(m + 1, total + 1);
  Eigen::MatrixXd full(m, total);  // standard-form constraint matrix
  full.setZero();
  full.leftCols(n) = a;
  std::vector<Eigen::Index> basis(m);
  Eigen::Index next_slack = n, next_art = art_begin;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (sense[i] == RowSense::LessEqual) {
      full(i, next_slack) = 1.0;
      basis[i] = next_slack++;
    } else if (sense[i] == RowSense::GreaterEqual) {
      full(i, next_slack++) = -1.0;
      full(i, next_art) = 1.0;
      basis[i] = next_art++;
    } else {
      full(i, next_art) = 1.0;
      basis[i] = next_art++;
    }
  }
  t.topLeftCorner(m, total) = full;
  t.col(total).head(m) = b;

  Tableau tab(std::move(t), std::move(basis));
  int iterations = 0;
  const int cap = static_cast<int>(50 * (m + total)) + 1000;

  if (n_art > 0) {
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(total);
    phase1.tail(n_art).setOnes();
    tab.price(phase1);
    tab.optimise(std::vector<bool>(total, true), iterations, cap);
    const double infeas = -tab.data()(m, total);
    if (infeas > 1e-9 * std::max(1.0, b.cwiseAbs().maxCoeff()))
      throw SolverError("simplex: problem is infeasible (phase-one residual " +
                        std::to_string(infeas) + ")");
    // Drive zero-level artificials out of the basis where possible.
    for (Eigen::Index i = 0; i < m; ++i) {
      if (tab.basis()[i] < art_begin) continue;
      for (Eigen::Index j = 0; j < art_begin; ++j) {
        if (std::abs(tab.data()(i, j)) > kPivotTol) {
          tab.pivot(i, j);
          break;
        }
      }
    }
  }

  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(total);
  phase2.head(n) = lp.cost;
  tab.price(phase2);
  std::vector<bool> allowed(total, true);
  for (Eigen::Index j = art_begin; j < total; ++j) allowed[j] = false;
  tab.optimise(allowed, iterations, cap);

  // Recompute the basic solution from the original data.
  Eigen::MatrixXd basis_matrix(m, m);
  for (Eigen::Index i = 0; i < m; ++i) basis_matrix.col(i) = full.col(tab.basis()[i]);
  Eigen::VectorXd xb = tab.data().col(total).head(m);
  if (m > 0) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix);
    const Eigen::VectorXd refined = lu.solve(b);
    const double resid = (basis_matrix * refined - b).cwiseAbs().maxCoeff();
    if (refined.allFinite() && refined.minCoeff() > -1e-9 &&
        resid <= 1e-9 * std::max(1.0, b.cwiseAbs().maxCoeff()))
      xb = refined;
  }
  LpSolution out;
  out.x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index j = tab.basis()[i];
    if (j < n) out.x(j) = std::max(xb(i), 0.0);
  }
  out.objective = lp.cost.dot(out.x);
  out.iterations = iterations;
  return out;
}

Eigen::VectorXd l1_min_box(const Eigen::MatrixXd& G, const Eigen::VectorXd& target,
                           const Eigen::VectorXd& width) {
  const Eigen::Index r = G.rows();
  const Eigen::Index k = G.cols();
  if (target.size() != r || width.size() != r)
    throw DimensionError("l1_min_box: inconsistent dimensions");
  if ((target.cwiseAbs().array() <= width.array()).all()) return Eigen::VectorXd::Zero(k);

  LinearProgram lp;
  lp.cost = Eigen::VectorXd::Ones(2 * k);
  lp.A.resize(2 * r, 2 * k);
  lp.A.topLeftCorner(r, k) = G;
  lp.A.topRightCorner(r, k) = -G;
  lp.A.bottomLeftCorner(r, k) = -G;
  lp.A.bottomRightCorner(r, k) = G;
  lp.rhs.resize(2 * r);
  lp.rhs.head(r) = target + width;
  lp.rhs.tail(r) = width - target;
  lp.sense.assign(2 * r, RowSense::LessEqual);
  const LpSolution sol = solve_simplex(lp);
  return sol.x.head(k) - sol.x.tail(k);
}

}  // namespace fnets::lp
