#include "fnets/precision.hpp"

#include <cmath>
#include <numbers>

#include "fnets/error.hpp"
#include "fnets/linalg.hpp"
#include "fnets/simplex.hpp"

namespace fnets {

namespace {

void check_square(const MatrixXd& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() == 0) throw DimensionError(std::string(who) + ": matrix must be square");
  if (!m.allFinite()) throw DataError(std::string(who) + ": non-finite input");
}

}  // namespace

MatrixXd symmetrise_min_modulus(const MatrixXd& M) {
  check_square(M, "symmetrise");
  MatrixXd out = M;
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < M.cols(); ++j) {
      const double v = std::abs(M(j, i)) < std::abs(M(i, j)) ? M(j, i) : M(i, j);
      out(i, j) = out(j, i) = v;
    }
  }
  return out;
}

MatrixXd clime_columns(const MatrixXd& Gamma, double eta) {
  check_square(Gamma, "clime");
  if (!(eta > 0.0)) throw UsageError("clime: eta must be positive");
  const Eigen::Index p = Gamma.rows();
  MatrixXd out(p, p);
  const VectorXd width = VectorXd::Constant(p, eta);
  for (Eigen::Index j = 0; j < p; ++j) {
    try {
      out.col(j) = lp::l1_min_box(Gamma, VectorXd::Unit(p, j), width);
    } catch (const SolverError& e) {
      throw SolverError("clime: column " + std::to_string(j + 1) + ": " + e.what());
    }
  }
  return out;
}

PrecisionFit clime(const MatrixXd& Gamma, double eta) {
  PrecisionFit fit;
  fit.Delta = symmetrise_min_modulus(clime_columns(Gamma, eta));
  fit.eta = eta;
  fit.adaptive = false;
  return fit;
}

AclimePilot aclime_pilot(const MatrixXd& Gamma, Eigen::Index n) {
  check_square(Gamma, "aclime");
  const Eigen::Index p = Gamma.rows();
  if (p < 2 || n < 2) throw DimensionError("aclime: needs p >= 2 and n >= 2");
  const VectorXd gdiag = Gamma.diagonal();
  if ((gdiag.array() <= 0.0).any()) throw DataError("aclime: non-positive diagonal entry");
  const double nd = static_cast<double>(n);
  const double logp = std::log(static_cast<double>(p));
  const MatrixXd gstar = Gamma + MatrixXd::Identity(p, p) / nd;

  AclimePilot pilot;
  pilot.eta1 = 2.0 * std::sqrt(logp / nd);
  pilot.delta_check.resize(p);
  pilot.delta_hat.resize(p);
  for (Eigen::Index c = 0; c < p; ++c) {
    // Variables m+ (0..p-1) and m- (p..2p-1). With w_i = eta1 max(g_ii, g_cc):
    //   (G* m)_i - w_i m_c <= e_i,   -(G* m)_i - w_i m_c <= -e_i,   m_c >= 1e-10.
    lp::LinearProgram prog;
    prog.cost = VectorXd::Ones(2 * p);
    prog.A = MatrixXd::Zero(2 * p + 1, 2 * p);
    prog.rhs = VectorXd::Zero(2 * p + 1);
    prog.sense.assign(2 * p + 1, lp::RowSense::LessEqual);
    for (Eigen::Index i = 0; i < p; ++i) {
      const double w = pilot.eta1 * std::max(gdiag(i), gdiag(c));
      RowVectorXd upper = gstar.row(i);
      upper(c) -= w;
      RowVectorXd lower = -gstar.row(i);
      lower(c) -= w;
      prog.A.block(i, 0, 1, p) = upper;
      prog.A.block(i, p, 1, p) = -upper;
      prog.A.block(p + i, 0, 1, p) = lower;
      prog.A.block(p + i, p, 1, p) = -lower;
      prog.rhs(i) = i == c ? 1.0 : 0.0;
      prog.rhs(p + i) = i == c ? -1.0 : 0.0;
    }
    prog.A(2 * p, c) = 1.0;
    prog.A(2 * p, p + c) = -1.0;
    prog.rhs(2 * p) = 1e-10;
    prog.sense[2 * p] = lp::RowSense::GreaterEqual;
    lp::LpSolution sol;
    try {
      sol = lp::solve_simplex(prog);
    } catch (const SolverError& e) {
      throw SolverError("aclime step one: column " + std::to_string(c + 1) + ": " + e.what());
    }
    pilot.delta_check(c) = sol.x(c) - sol.x(p + c);
    const bool truncate = std::abs(gdiag(c)) > std::sqrt(nd / logp);
    pilot.delta_hat(c) = truncate ? std::sqrt(logp / nd) : pilot.delta_check(c);
  }
  return pilot;
}

MatrixXd aclime_columns(const MatrixXd& Gamma, const AclimePilot& pilot, double eta2, Eigen::Index n) {
  check_square(Gamma, "aclime");
  if (!(eta2 > 0.0)) throw UsageError("aclime: eta must be positive");
  const Eigen::Index p = Gamma.rows();
  const MatrixXd gstar = Gamma + MatrixXd::Identity(p, p) / static_cast<double>(n);
  MatrixXd out(p, p);
  for (Eigen::Index c = 0; c < p; ++c) {
    const VectorXd width = eta2 * (Gamma.diagonal() * pilot.delta_hat(c)).cwiseMax(0.0).cwiseSqrt();
    try {
      out.col(c) = lp::l1_min_box(gstar, VectorXd::Unit(p, c), width);
    } catch (const SolverError& e) {
      throw SolverError("aclime step two: column " + std::to_string(c + 1) + ": " + e.what());
    }
  }
  return out;
}

PrecisionFit aclime(const MatrixXd& Gamma, const AclimePilot& pilot, double eta2, Eigen::Index n) {
  PrecisionFit fit;
  fit.Delta = symmetrise_min_modulus(aclime_columns(Gamma, pilot, eta2, n));
  fit.eta = eta2;
  fit.adaptive = true;
  return fit;
}

PrecisionFit aclime(const MatrixXd& Gamma, double eta2, Eigen::Index n) {
  return aclime(Gamma, aclime_pilot(Gamma, n), eta2, n);
}

MatrixXd a_one(const VarFit& fit) {
  const Eigen::Index p = fit.p();
  MatrixXd a1 = MatrixXd::Identity(p, p);
  for (int l = 1; l <= fit.order; ++l) a1 -= fit.A(l);
  return a1;
}

void longrun_precision(PrecisionFit& prec, const VarFit& fit) {
  prec.A1 = a_one(fit);
  prec.Omega = 2.0 * std::numbers::pi * prec.A1.transpose() * prec.Delta * prec.A1;
  prec.Omega = linalg::symmetrize(prec.Omega);
  prec.pc = partial_correlations(prec.Delta);
  prec.lrpc = partial_correlations(prec.Omega);
}

MatrixXd partial_correlations(const MatrixXd& M) {
  check_square(M, "partial_correlations");
  const VectorXd d = M.diagonal();
  if ((d.array() <= 0.0).any()) throw DataError("partial_correlations: non-positive diagonal entry");
  MatrixXd out(M.rows(), M.cols());
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      out(i, j) = i == j ? 1.0 : -M(i, j) / std::sqrt(d(i) * d(j));
  return out;
}

}  // namespace fnets
