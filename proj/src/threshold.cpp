#include "fnets/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fnets/error.hpp"

namespace fnets {

std::vector<double> candidate_grid(const MatrixXd& B, int M) {
  if (M < 4) throw DimensionError("threshold grid needs M >= 4");
  const double top = B.size() ? B.cwiseAbs().maxCoeff() : 0.0;
  if (!(top > 0.0)) throw SelectionError("threshold selection on an all-zero matrix");
  double low = top;
  for (Eigen::Index i = 0; i < B.size(); ++i) {
    const double a = std::abs(B.data()[i]);
    if (a > 0.0) low = std::min(low, a);
  }
  std::vector<double> t(M);
  t[0] = 0.0;
  const double ratio = std::log(top / low);
  for (int k = 1; k < M; ++k) t[k] = low * std::exp(ratio * (k - 1) / (M - 2));
  t[1] = low;
  t[M - 1] = top;
  // Strictly increasing even when every nonzero entry has the same modulus.
  for (int k = 2; k < M; ++k)
    if (!(t[k] > t[k - 1])) t[k] = std::nextafter(t[k - 1], std::numeric_limits<double>::infinity());
  return t;
}

void cusum_select(ThresholdSelection& sel) {
  const int M = static_cast<int>(sel.candidates.size());
  if (M < 4 || static_cast<int>(sel.ratio.size()) != M)
    throw DimensionError("CUSUM needs at least four candidates with matching ratios");
  const auto& t = sel.candidates;
  sel.diff.assign(M - 1, 0.0);  // diff[k - 2] holds Diff_k
  for (int k = 2; k <= M; ++k)
    sel.diff[k - 2] = (sel.ratio[k - 1] - sel.ratio[k - 2]) / (t[k - 1] - t[k - 2]);
  // Prefix sums over Diff_2..Diff_k.
  std::vector<double> prefix(M + 1, 0.0);
  for (int k = 2; k <= M; ++k) prefix[k] = prefix[k - 1] + sel.diff[k - 2];
  const double total = prefix[M];
  sel.cusum.assign(M - 2, 0.0);
  double best = -1.0;
  sel.k_star = 2;
  for (int k = 2; k <= M - 1; ++k) {
    const double left = prefix[k] / k;
    const double right = (total - prefix[k]) / (M - k);
    const double c = std::sqrt(static_cast<double>(k) * (M - k) / M) * std::abs(left - right);
    sel.cusum[k - 2] = c;
    if (c > best) {
      best = c;
      sel.k_star = k;
    }
  }
  sel.t_ada = t[sel.k_star - 1];
}

ThresholdSelection select_threshold(const MatrixXd& B, long long N, int M) {
  ThresholdSelection sel;
  sel.candidates = candidate_grid(B, M);
  sel.N = N;
  const long long nnz = (B.array() != 0.0).count();
  if (N < nnz) throw DimensionError("threshold selection: N smaller than the support of B");
  std::vector<double> mags;
  mags.reserve(B.size());
  for (Eigen::Index i = 0; i < B.size(); ++i) mags.push_back(std::abs(B.data()[i]));
  std::sort(mags.begin(), mags.end());
  sel.ratio.resize(M);
  for (int k = 0; k < M; ++k) {
    // |B(t)|_0 = number of |b| > t.
    const auto above = mags.end() - std::upper_bound(mags.begin(), mags.end(), sel.candidates[k]);
    const double count = static_cast<double>(above);
    sel.ratio[k] = count / std::max(static_cast<double>(N) - count, 1.0);
  }
  cusum_select(sel);
  return sel;
}

MatrixXd off_diagonal(const MatrixXd& B) {
  MatrixXd out = B;
  out.diagonal().setZero();
  return out;
}

}  // namespace fnets
