#pragma once

#include <limits>
#include <vector>

#include "fnets/panel.hpp"
#include "fnets/precision.hpp"
#include "fnets/spectral.hpp"
#include "fnets/var_estimation.hpp"

namespace fnets {

/// 0-based half-open index ranges of one fold.
struct FoldBounds {
  Eigen::Index train_begin = 0, train_end = 0;
  Eigen::Index test_begin = 0, test_end = 0;
};

/// n_0 = 0, n_l = min(l ceil(n/L), n); fold l covers (n_{l-1}, n_l] and is
/// split at ceil((n_{l-1} + n_l) / 2). Each half must hold `min_len` points.
std::vector<FoldBounds> make_folds(Eigen::Index n, int L, Eigen::Index min_len = 2);

/// How the factor adjustment is redone on each segment.
struct FactorArgs {
  ModelKind kind = ModelKind::Unrestricted;
  int q = 0;
  int bandwidth = -1;  // -1: default for the segment length
};

enum class TuningMethod { Cv, Ebic };
const char* to_string(TuningMethod method);

struct TuningResult {
  TuningMethod method = TuningMethod::Cv;
  std::vector<double> grid_lambda;  // descending
  std::vector<int> orders;
  MatrixXd score;  // rows follow grid_lambda, columns follow orders
  MatrixXd support;  // eBIC only: nonzero count after thresholding
  double lambda_hat = 0.0;
  int d_hat = 1;
  int n_folds = 1;
  double alpha = 0.0;
  std::vector<FoldBounds> folds;
};

struct EtaTuningResult {
  std::vector<double> grid_eta;  // descending
  std::vector<double> score;
  double eta_hat = 0.0;
  bool adaptive = false;
  std::vector<FoldBounds> folds;
};

/// top * 100^{-i/(len-1)}, i = 0..len-1.
std::vector<double> geometric_grid(double top, int len);

/// lambda_max = 2|g|_inf (lasso) or |g|_inf (Dantzig), down to lambda_max/100.
std::vector<double> default_lambda_grid(const YuleWalkerSystem& sys, VarMethod method, int path_length);

/// eta_max = |Gamma|_inf, down to eta_max/100.
std::vector<double> default_eta_grid(const MatrixXd& Gamma, int path_length);

/// eta2_max = max_i 1/sqrt(gamma_ii delta_ii), down to eta2_max/100.
std::vector<double> default_eta2_grid(const MatrixXd& Gamma, const AclimePilot& pilot, int path_length);

struct VarTuningOptions {
  VarMethod method = VarMethod::Lasso;
  std::vector<int> orders = {1};
  std::vector<double> lambdas;  // empty: default grid from the full sample
  int folds = 1;
  int path_length = 10;
  double alpha = 0.0;
  FistaOptions fista;
};

VarFit estimate_var(const YuleWalkerSystem& sys, VarMethod method, double lambda,
                    const FistaOptions& fista = {});

/// tr(Gamma(0) - beta'g - g'beta + beta'G beta).
double prediction_score(const MatrixXd& gamma0, const YuleWalkerSystem& sys, const MatrixXd& beta);

TuningResult cv_var(const TimeSeriesPanel& panel, const FactorArgs& factor,
                    const VarTuningOptions& options);

TuningResult ebic_var(const TimeSeriesPanel& panel, const FactorArgs& factor,
                      const VarTuningOptions& options);

/// log of the binomial coefficient via lgamma.
double log_binomial(double n, double k);

/// tr(D G) - log det(D G) - p; +inf when the determinant is not positive.
double burg_divergence(const MatrixXd& Delta, const MatrixXd& Gamma);

struct EtaTuningOptions {
  bool adaptive = false;
  std::vector<double> etas;  // empty: default grid
  int folds = 1;
  int path_length = 10;
};

/// Burg-divergence CV for the CLIME (or ACLIME) parameter. The innovation
/// covariances on each segment use the supplied VAR coefficients.
EtaTuningResult cv_delta(const TimeSeriesPanel& panel, const FactorArgs& factor, const VarFit& fit,
                         const EtaTuningOptions& options);

}  // namespace fnets
