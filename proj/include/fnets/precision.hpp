#pragma once

#include <vector>

#include "fnets/panel.hpp"
#include "fnets/var_estimation.hpp"

namespace fnets {

struct PrecisionFit {
  MatrixXd Delta;
  MatrixXd Omega;
  MatrixXd pc;    // partial correlations from Delta
  MatrixXd lrpc;  // long-run partial correlations from Omega
  MatrixXd A1;    // I - sum_l A_l
  double eta = 0.0;
  bool adaptive = false;
};

/// out_ij = M_ij if |M_ij| < |M_ji|, M_ji if |M_ji| < |M_ij|; on ties both
/// positions take the upper-triangle value.
MatrixXd symmetrise_min_modulus(const MatrixXd& M);

/// Column-wise CLIME before symmetrisation.
MatrixXd clime_columns(const MatrixXd& Gamma, double eta);
PrecisionFit clime(const MatrixXd& Gamma, double eta);

/// Step one of the adaptive estimator: diagonal of the truncated pilot.
struct AclimePilot {
  VectorXd delta_check;  // diagonal of the step-one solution
  VectorXd delta_hat;    // after truncation
  double eta1 = 0.0;
};
AclimePilot aclime_pilot(const MatrixXd& Gamma, Eigen::Index n);
MatrixXd aclime_columns(const MatrixXd& Gamma, const AclimePilot& pilot, double eta2, Eigen::Index n);
PrecisionFit aclime(const MatrixXd& Gamma, double eta2, Eigen::Index n);
PrecisionFit aclime(const MatrixXd& Gamma, const AclimePilot& pilot, double eta2, Eigen::Index n);

/// I - sum_l A_l.
MatrixXd a_one(const VarFit& fit);

/// Fills A1, Omega = 2 pi A1' Delta A1, pc and lrpc.
void longrun_precision(PrecisionFit& prec, const VarFit& fit);

/// -M_ij / sqrt(M_ii M_jj) off the diagonal, ones on it.
MatrixXd partial_correlations(const MatrixXd& M);

}  // namespace fnets
