#include "fnets/var_estimation.hpp"

#include <cmath>

#include "fnets/error.hpp"
#include "fnets/linalg.hpp"
#include "fnets/simplex.hpp"

namespace fnets {

namespace {

MatrixXd soft_threshold(const MatrixXd& x, double t) {
  return x.unaryExpr([t](double v) {
    const double a = std::abs(v) - t;
    return a > 0.0 ? std::copysign(a, v) : 0.0;
  });
}

}  // namespace

const char* to_string(VarMethod method) { return method == VarMethod::Dantzig ? "ds" : "lasso"; }

YuleWalkerSystem build_yule_walker(const AcvSequence& acv, int order) {
  if (order < 1) throw DimensionError("build_yule_walker: order must be positive");
  if (acv.max_lag() < order) throw DimensionError("build_yule_walker: not enough lags");
  const Eigen::Index p = acv.p();
  YuleWalkerSystem sys;
  sys.order = order;
  sys.G.resize(p * order, p * order);
  sys.g.resize(p * order, p);
  for (int i = 0; i < order; ++i) {
    for (int j = 0; j < order; ++j) sys.G.block(i * p, j * p, p, p) = acv.at(i - j);
    sys.g.block(i * p, 0, p, p) = acv.matrices[i + 1];
  }
  return sys;
}

MatrixXd VarFit::A(int l) const {
  const Eigen::Index p = beta.cols();
  if (l < 1 || l > order) throw DimensionError("VarFit::A: lag out of range");
  return beta.block((l - 1) * p, 0, p, p).transpose();
}

double lasso_objective(const YuleWalkerSystem& sys, const MatrixXd& M, double lambda) {
  return (M.transpose() * sys.G * M).trace() - 2.0 * (M.transpose() * sys.g).trace() +
         lambda * M.cwiseAbs().sum();
}

VarFit lasso_fista(const YuleWalkerSystem& sys, double lambda, const FistaOptions& options) {
  if (!(lambda > 0.0)) throw UsageError("lasso: lambda must be positive");
  const linalg::PsdProjection proj = linalg::project_psd(sys.G);
  YuleWalkerSystem work{sys.order, proj.matrix, sys.g};

  VarFit fit;
  fit.order = sys.order;
  fit.method = VarMethod::Lasso;
  fit.lambda = lambda;
  fit.psd_clipped = proj.clipped;
  const Eigen::Index rows = sys.g.rows(), cols = sys.g.cols();
  MatrixXd x = MatrixXd::Zero(rows, cols);
  const double lip = 2.0 * proj.max_eigenvalue;
  if (!(lip > 0.0)) {
    // G = 0: the objective is linear plus l1, bounded only if |2g| <= lambda.
    if (2.0 * sys.g.cwiseAbs().maxCoeff() > lambda)
      throw NumericalError("lasso: objective unbounded with zero Gram matrix");
    fit.beta = x;
    fit.objective_trace.push_back(0.0);
    return fit;
  }
  const double step = 1.0 / lip;
  MatrixXd y = x, x_prev;
  double t = 1.0;
  double obj = lasso_objective(work, x, lambda);
  fit.objective_trace.push_back(obj);
  for (int it = 0; it < options.max_iter; ++it) {
    x_prev = x;
    const MatrixXd grad = 2.0 * (work.G * y - work.g);
    x = soft_threshold(y - step * grad, step * lambda);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = x + ((t - 1.0) / t_next) * (x - x_prev);
    t = t_next;
    const double next = lasso_objective(work, x, lambda);
    if (!std::isfinite(next)) throw NumericalError("lasso: non-finite objective");
    fit.objective_trace.push_back(next);
    fit.iterations = it + 1;
    const double change = std::abs(next - obj) / std::max(std::abs(obj), 1e-12);
    obj = next;
    if (change < options.tol) break;
  }
  fit.beta = x;
  return fit;
}

VarFit dantzig_lp(const YuleWalkerSystem& sys, double lambda) {
  if (!(lambda > 0.0)) throw UsageError("dantzig: lambda must be positive");
  VarFit fit;
  fit.order = sys.order;
  fit.method = VarMethod::Dantzig;
  fit.lambda = lambda;
  fit.beta.resize(sys.g.rows(), sys.g.cols());
  const VectorXd width = VectorXd::Constant(sys.g.rows(), lambda);
  for (Eigen::Index j = 0; j < sys.g.cols(); ++j) {
    try {
      fit.beta.col(j) = lp::l1_min_box(sys.G, sys.g.col(j), width);
    } catch (const SolverError& e) {
      throw SolverError("dantzig: column " + std::to_string(j + 1) + ": " + e.what());
    }
  }
  return fit;
}

MatrixXd threshold_matrix(const MatrixXd& B, double t) {
  return B.unaryExpr([t](double v) { return std::abs(v) > t ? v : 0.0; });
}

MatrixXd innovation_covariance(const AcvSequence& acv, const VarFit& fit) {
  const YuleWalkerSystem sys = build_yule_walker(acv, fit.order);
  const MatrixXd g = acv.matrices[0] - fit.beta.transpose() * sys.g;
  return linalg::symmetrize(g);
}

MatrixXd companion_matrix(const MatrixXd& beta) {
  const Eigen::Index p = beta.cols();
  const Eigen::Index d = beta.rows() / p;
  MatrixXd c = MatrixXd::Zero(p * d, p * d);
  for (Eigen::Index l = 0; l < d; ++l) c.block(0, l * p, p, p) = beta.block(l * p, 0, p, p).transpose();
  if (d > 1) c.block(p, 0, p * (d - 1), p * (d - 1)).setIdentity();
  return c;
}

}  // namespace fnets
