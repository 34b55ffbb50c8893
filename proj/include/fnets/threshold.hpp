#pragma once

#include <vector>

#include "fnets/panel.hpp"

namespace fnets {

struct ThresholdSelection {
  std::vector<double> candidates;  // t_1 = 0 < t_2 < ... < t_M = |B|_inf
  std::vector<double> ratio;       // Ratio_k, k = 1..M
  std::vector<double> diff;        // Diff_k, k = 2..M
  std::vector<double> cusum;       // CUSUM_k, k = 2..M-1
  int k_star = 2;                  // 1-based index into candidates
  double t_ada = 0.0;
  long long N = 0;
};

/// t_1 = 0, then M - 1 geometric points from the smallest nonzero |b| to |B|_inf.
std::vector<double> candidate_grid(const MatrixXd& B, int M = 100);

/// Diff and CUSUM from a candidate grid and its Ratio values; fills
/// everything but `candidates`, `ratio` and `N`, which are taken as given.
void cusum_select(ThresholdSelection& sel);

ThresholdSelection select_threshold(const MatrixXd& B, long long N, int M = 100);

/// B with its diagonal set to zero.
MatrixXd off_diagonal(const MatrixXd& B);

}  // namespace fnets
