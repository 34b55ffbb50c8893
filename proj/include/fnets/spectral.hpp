#pragma once

#include <vector>

#include <Eigen/Dense>

#include "fnets/panel.hpp"

namespace fnets {

using Eigen::MatrixXcd;

/// floor(4 (n / ln n)^{1/3}), clamped to [1, n - 1]. Requires n >= 3.
int default_bandwidth(Eigen::Index n);

/// Bartlett-smoothed spectral density at omega_k = 2 pi k / (2m + 1),
/// k = -m..m. Index k is stored at position k + m.
struct SpectralEstimate {
  int m = 0;
  std::vector<double> frequencies;
  std::vector<MatrixXcd> matrices;
  std::vector<VectorXd> eigenvalues;    // descending
  std::vector<MatrixXcd> eigenvectors;  // empty when not requested

  int size() const { return 2 * m + 1; }
  const MatrixXcd& at(int k) const { return matrices[k + m]; }
};

/// Sigma(w) = (2 pi)^{-1} sum_{|l| <= m} (1 - |l|/m) Gamma(l) e^{-i l w}.
/// Only k = 0..m is decomposed; negative frequencies are conjugates.
SpectralEstimate bartlett_spectral_density(const AcvSequence& acv, int m, bool want_vectors = true);

/// Rank-q reconstruction from the q leading eigenpairs at each frequency.
SpectralEstimate dynamic_pca_common(const SpectralEstimate& spec, int q);

/// Gamma(l) = 2 pi / (2m + 1) sum_k Sigma(w_k) e^{i l w_k} for l = 0..m.
AcvSequence inverse_ft_acv(const SpectralEstimate& spec, ProcessLabel label = ProcessLabel::Chi);

/// Per-index average over frequencies of the spectral eigenvalues.
VectorXd averaged_eigenvalues(const SpectralEstimate& spec);

enum class ModelKind { Unrestricted, Restricted };
const char* to_string(ModelKind kind);

struct FactorAdjustment {
  int q_or_r = 0;
  ModelKind kind = ModelKind::Unrestricted;
  int bandwidth = 0;  // m for the unrestricted model, max lag otherwise
  AcvSequence acv_x, acv_chi, acv_xi;
  MatrixXd static_eigvecs;  // restricted only: p x r
  VectorXd static_eigvals;
};

FactorAdjustment factor_adjust_unrestricted(const TimeSeriesPanel& panel, int q, int m);
FactorAdjustment factor_adjust_restricted(const TimeSeriesPanel& panel, int r, int max_lag);

}  // namespace fnets

namespace fnets {

/// Factor adjustment with a per-panel default bandwidth. `min_lags` is the
/// number of idiosyncratic lags that must be available downstream.
FactorAdjustment factor_adjust(const TimeSeriesPanel& panel, ModelKind kind, int q_or_r,
                               int bandwidth, int min_lags);

}  // namespace fnets
