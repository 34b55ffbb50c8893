#include "fnets/factor_number.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fnets/error.hpp"
#include "fnets/linalg.hpp"

namespace fnets {

namespace {

constexpr double kTiny = std::numeric_limits<double>::min();

// Subsample sizes n_l = n - (L - l) floor(n / 20), p_l = floor(3p/4 + l p/40).
Eigen::Index sub_n(Eigen::Index n, int l, int L) { return n - (L - l) * (n / 20); }
Eigen::Index sub_p(Eigen::Index p, int l) { return ((30 + l) * p) / 40; }

}  // namespace

int default_q_max(Eigen::Index n, Eigen::Index p) {
  const double k = std::floor(std::sqrt(static_cast<double>(std::min(n - 1, p))));
  return static_cast<int>(std::min(50.0, k));
}

double ic_penalty(int variant, ModelKind kind, Eigen::Index n, Eigen::Index p, int m) {
  if (variant < 1 || variant > 6) throw UsageError("IC variant must lie in 1..6");
  const double nd = static_cast<double>(n), pd = static_cast<double>(p);
  if (kind == ModelKind::Unrestricted) {
    const double md = static_cast<double>(m);
    const double c = std::min({pd, md * md, std::sqrt(nd / md)});
    switch (variant) {
      case 1:
      case 4:
        return (1.0 / (md * md) + std::sqrt(md / nd) + 1.0 / pd) * std::log(c);
      case 2:
      case 5:
        return 1.0 / std::sqrt(c);
      default:
        return std::log(c) / c;
    }
  }
  switch (variant) {
    case 3:
    case 6: {
      const double c = std::min(nd, pd);
      return std::log(c) / c;
    }
    default:
      return (nd + pd) / (nd * pd) * std::log(nd * pd / (nd + pd));
  }
}

double ic_value(const VectorXd& eigen_summary, int b, double c, int variant, ModelKind kind,
                Eigen::Index n, Eigen::Index p, int m) {
  if (b < 0 || b > p || b > eigen_summary.size())
    throw DimensionError("ic_value: candidate factor number out of range");
  const double tail = eigen_summary.tail(eigen_summary.size() - b).sum() / static_cast<double>(p);
  const double fit = variant >= 4 ? std::log(std::max(tail, kTiny)) : tail;
  return fit + b * c * ic_penalty(variant, kind, n, p, m);
}

int ic_argmin(const VectorXd& eigen_summary, double c, int variant, ModelKind kind, Eigen::Index n,
              Eigen::Index p, int m, int q_max) {
  int best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  const int top = std::min<int>(q_max, static_cast<int>(eigen_summary.size()));
  for (int b = 0; b <= top; ++b) {
    const double v = ic_value(eigen_summary, b, c, variant, kind, n, p, m);
    if (v < best_val) {
      best_val = v;
      best = b;
    }
  }
  return best;
}

VectorXd panel_eigen_summary(const TimeSeriesPanel& panel, ModelKind kind, int m) {
  if (kind == ModelKind::Restricted) {
    const AcvSequence acv = sample_acv(panel, 0);
    return linalg::jacobi_eigen(acv.matrices[0], false).values;
  }
  const AcvSequence acv = sample_acv(panel, m);
  return averaged_eigenvalues(bartlett_spectral_density(acv, m, false));
}

std::size_t stability_index(const std::vector<double>& s_of_c, bool& fallback) {
  fallback = false;
  int runs = 0;
  for (std::size_t i = 0; i < s_of_c.size(); ++i) {
    const bool zero = s_of_c[i] == 0.0;
    const bool starts = zero && (i == 0 || s_of_c[i - 1] != 0.0);
    if (starts && ++runs == 2) return i;
  }
  fallback = true;
  for (std::size_t i = s_of_c.size(); i-- > 0;)
    if (s_of_c[i] == 0.0) return i;
  return static_cast<std::size_t>(std::min_element(s_of_c.begin(), s_of_c.end()) - s_of_c.begin());
}

FactorNumberSelection select_q_ic(const TimeSeriesPanel& panel, ModelKind kind,
                                  const IcOptions& options) {
  const Eigen::Index n = panel.n(), p = panel.p();
  const int L = options.subsamples;
  if (L < 2) throw UsageError("select_q_ic: need at least two subsamples");
  if (options.grid_size < 1 || !(options.c_max > 0.0))
    throw UsageError("select_q_ic: c grid must be non-empty with positive c_max");
  if (sub_n(n, 1, L) < 3 || sub_p(p, 1) < 1)
    throw DimensionError("select_q_ic: panel too small for the subsample schedule");
  const int q_max = options.q_max < 0 ? default_q_max(n, p) : options.q_max;
  if (q_max > p) throw DimensionError("select_q_ic: q_max exceeds p");

  FactorNumberSelection sel;
  sel.method = FactorMethod::Ic;
  sel.kind = kind;
  sel.ic_variant = options.variant;
  sel.q_max = q_max;

  struct Sub {
    VectorXd summary;
    Eigen::Index n, p;
    int m;
  };
  std::vector<Sub> subs;
  subs.reserve(L);
  for (int l = 1; l <= L; ++l) {
    Sub s{VectorXd(), sub_n(n, l, L), sub_p(p, l), 0};
    s.m = default_bandwidth(s.n);
    const TimeSeriesPanel sp = panel_segment(panel, s.p, 0, s.n, false);
    s.summary = panel_eigen_summary(sp, kind, s.m);
    subs.push_back(std::move(s));
  }
  sel.eigen_summary = subs.back().summary;

  sel.c_grid.resize(options.grid_size);
  sel.q_by_c.resize(options.grid_size);
  sel.s_of_c.resize(options.grid_size);
  std::vector<double> picks(L);
  for (int i = 0; i < options.grid_size; ++i) {
    const double c = options.c_max * (i + 1) / options.grid_size;
    sel.c_grid[i] = c;
    double mean = 0.0;
    for (int l = 0; l < L; ++l) {
      const Sub& s = subs[l];
      picks[l] = ic_argmin(s.summary, c, options.variant, kind, s.n, s.p, s.m,
                           std::min<int>(q_max, static_cast<int>(s.p)));
      mean += picks[l];
    }
    mean /= L;
    double var = 0.0;
    for (double v : picks) var += (v - mean) * (v - mean);
    sel.s_of_c[i] = var / (L - 1);
    sel.q_by_c[i] = static_cast<int>(picks.back());
  }
  const std::size_t idx = stability_index(sel.s_of_c, sel.fallback);
  sel.c_hat = sel.c_grid[idx];
  sel.q_hat = sel.q_by_c[idx];
  if (sel.fallback) sel.status = "no second stability interval; fallback choice of c";
  return sel;
}

int er_argmax(const VectorXd& sums, int q_max, std::vector<double>* curve) {
  if (q_max < 1 || q_max >= sums.size())
    throw DimensionError("er: q_max must lie in [1, p - 1]");
  int best = 1;
  double best_val = -std::numeric_limits<double>::infinity();
  if (curve) curve->clear();
  for (int b = 1; b <= q_max; ++b) {
    const double ratio = sums(b - 1) / std::max(sums(b), kTiny);
    if (curve) curve->push_back(ratio);
    if (ratio > best_val) {
      best_val = ratio;
      best = b;
    }
  }
  return best;
}

FactorNumberSelection select_q_er(const TimeSeriesPanel& panel, ModelKind kind, int q_max) {
  const Eigen::Index n = panel.n(), p = panel.p();
  if (q_max < 0) q_max = default_q_max(n, p);
  if (q_max >= p) throw DimensionError("select_q_er: q_max must be below p");
  FactorNumberSelection sel;
  sel.method = FactorMethod::Er;
  sel.kind = kind;
  sel.q_max = q_max;
  sel.eigen_summary = panel_eigen_summary(panel, kind, default_bandwidth(n));
  sel.q_hat = er_argmax(sel.eigen_summary, q_max, &sel.er_curve);
  return sel;
}

}  // namespace fnets
