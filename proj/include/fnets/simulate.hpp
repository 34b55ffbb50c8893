#pragma once

#include <cstdint>
#include <vector>

#include "fnets/panel.hpp"
#include "fnets/rng.hpp"

namespace fnets {

enum class InnovationKind { Identity, Banded };

struct SimSpec {
  Eigen::Index n = 500;
  Eigen::Index p = 50;
  int q = 2;
  int var_order = 1;
  double link_prob = -1.0;  // -1: 1/p
  double coeff_value = 0.275;
  InnovationKind innovation = InnovationKind::Identity;
  bool heavy_tails = false;
  std::uint64_t seed = 111;
  int burn_in = 100;
};

struct VarSimulation {
  MatrixXd data;                // p x n
  std::vector<MatrixXd> A;      // A_1..A_d
  MatrixXd Delta;               // innovation precision
  MatrixXd Gamma;               // innovation covariance
  MatrixXd innovations;         // p x n, aligned with data
  int graph_draws = 1;
};

struct FactorSimulation {
  MatrixXd data;         // p x n
  MatrixXd loadings;     // a_ij (unrestricted) or Lambda (restricted)
  MatrixXd ar_coefs;     // alpha_ij (unrestricted only)
  MatrixXd shocks;       // q x (burn_in + n)
};

/// delta_ii = 1, delta_{i,i+-1} = 0.6, delta_{i,i+-2} = 0.3.
MatrixXd banded_delta(Eigen::Index p);

/// Unit-variance innovation draw (standard normal or sqrt(3/5) t_5).
double innovation_draw(Rng& rng, bool heavy);

VarSimulation sim_var(const SimSpec& spec, Rng& rng);
VarSimulation sim_var(const SimSpec& spec);

/// chi_it = sum_j a_ij (1 - alpha_ij L)^{-1} u_jt.
FactorSimulation sim_unrestricted(const SimSpec& spec, Rng& rng);

/// chi_t = Lambda (u_t', u_{t-1}')' with Gaussian loadings.
FactorSimulation sim_restricted(const SimSpec& spec, Rng& rng);

enum class IndexSet { All, OffDiagonal };

struct EvalMetrics {
  double tpr = 0.0, fpr = 0.0;
  double l_f = 0.0, l_2 = 0.0;
};

EvalMetrics metrics(const MatrixXd& estimate, const MatrixXd& truth, IndexSet set = IndexSet::All);

/// TPR at a given FPR along the ROC curve traced by thresholding |estimate|,
/// interpolated linearly and closed at (1, 1).
double tpr_at_fpr(const MatrixXd& estimate, const MatrixXd& truth, double fpr,
                  IndexSet set = IndexSet::All);

}  // namespace fnets
