#pragma once

#include <string>
#include <vector>

#include "fnets/panel.hpp"
#include "fnets/spectral.hpp"

namespace fnets {

enum class FactorMethod { Ic, Er };

struct FactorNumberSelection {
  FactorMethod method = FactorMethod::Ic;
  ModelKind kind = ModelKind::Unrestricted;
  int ic_variant = 5;
  int q_hat = 0;
  int q_max = 0;
  std::vector<double> c_grid;
  std::vector<int> q_by_c;       // selection on the full panel at each c
  std::vector<double> s_of_c;    // variance of the subsample selections
  double c_hat = 0.0;
  std::vector<double> er_curve;  // ER(b), b = 1..q_max
  VectorXd eigen_summary;        // averaged (or static) eigenvalues of the full panel
  bool fallback = false;         // no second stability interval was found
  std::string status = "ok";
};

/// min(50, floor(sqrt(min(n - 1, p)))).
int default_q_max(Eigen::Index n, Eigen::Index p);

/// Penalty multiplying b * c for an IC variant 1..6.
double ic_penalty(int variant, ModelKind kind, Eigen::Index n, Eigen::Index p, int m);

/// IC(b, c) from the descending eigenvalue summary (frequency-averaged for
/// the unrestricted model, static for the restricted one).
double ic_value(const VectorXd& eigen_summary, int b, double c, int variant, ModelKind kind,
                Eigen::Index n, Eigen::Index p, int m);

/// argmin_b IC(b, c) over 0..q_max, ties to the smaller b.
int ic_argmin(const VectorXd& eigen_summary, double c, int variant, ModelKind kind, Eigen::Index n,
              Eigen::Index p, int m, int q_max);

/// Eigenvalue summary of a panel: averaged spectral eigenvalues with the
/// default bandwidth, or eigenvalues of the lag-zero covariance.
VectorXd panel_eigen_summary(const TimeSeriesPanel& panel, ModelKind kind, int m);

struct IcOptions {
  int variant = 5;
  int q_max = -1;  // -1: default_q_max
  double c_max = 3.0;
  int grid_size = 200;
  int subsamples = 10;
};

FactorNumberSelection select_q_ic(const TimeSeriesPanel& panel, ModelKind kind,
                                  const IcOptions& options = {});

/// Given per-c subsample variances, the index of the chosen c: start of the
/// second zero-variance run, else the last zero, else the smallest variance.
std::size_t stability_index(const std::vector<double>& s_of_c, bool& fallback);

/// argmax_b sums(b-1) / sums(b) over b = 1..q_max, first index on ties.
int er_argmax(const VectorXd& sums, int q_max, std::vector<double>* curve = nullptr);

FactorNumberSelection select_q_er(const TimeSeriesPanel& panel, ModelKind kind, int q_max = -1);

}  // namespace fnets
