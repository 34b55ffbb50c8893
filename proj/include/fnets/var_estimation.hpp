#pragma once

#include <vector>

#include "fnets/panel.hpp"

namespace fnets {

struct YuleWalkerSystem {
  int order = 1;
  MatrixXd G;  // pd x pd, block (i, j) = Gamma(i - j)
  MatrixXd g;  // pd x p, block i = Gamma(i)
};

YuleWalkerSystem build_yule_walker(const AcvSequence& acv, int order);

enum class VarMethod { Lasso, Dantzig };
const char* to_string(VarMethod method);

struct VarFit {
  int order = 1;
  MatrixXd beta;  // stacked [A_1, ..., A_d]'
  VarMethod method = VarMethod::Lasso;
  double lambda = 0.0;
  MatrixXd Gamma_hat;
  double threshold = 0.0;  // 0 when no thresholding was applied
  std::vector<double> objective_trace;
  bool psd_clipped = false;
  int iterations = 0;

  Eigen::Index p() const { return beta.cols(); }
  /// A_l for l = 1..order.
  MatrixXd A(int l) const;
};

struct FistaOptions {
  int max_iter = 200;
  double tol = 1e-4;  // relative objective change
};

/// tr(M'GM - 2M'g) + lambda |M|_1.
double lasso_objective(const YuleWalkerSystem& sys, const MatrixXd& M, double lambda);

VarFit lasso_fista(const YuleWalkerSystem& sys, double lambda, const FistaOptions& options = {});

/// Column-wise min |m|_1 s.t. |G m - g_j|_inf <= lambda.
VarFit dantzig_lp(const YuleWalkerSystem& sys, double lambda);

/// Keeps entries with |b| > t.
MatrixXd threshold_matrix(const MatrixXd& B, double t);

/// Gamma(0) - beta' g, symmetrised.
MatrixXd innovation_covariance(const AcvSequence& acv, const VarFit& fit);

/// Companion matrix of a stacked coefficient matrix.
MatrixXd companion_matrix(const MatrixXd& beta);

}  // namespace fnets
