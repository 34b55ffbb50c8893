#include "fnets/tuning.hpp"

#include <algorithm>
#include <cmath>

#include "fnets/error.hpp"
#include "fnets/linalg.hpp"
#include "fnets/threshold.hpp"

namespace fnets {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::Index ceil_div(Eigen::Index a, Eigen::Index b) { return (a + b - 1) / b; }

TimeSeriesPanel segment(const TimeSeriesPanel& panel, Eigen::Index begin, Eigen::Index end) {
  return panel_segment(panel, panel.p(), begin, end - begin, true);
}

int max_order(const std::vector<int>& orders) {
  if (orders.empty()) throw UsageError("no candidate VAR orders");
  const int top = *std::max_element(orders.begin(), orders.end());
  if (*std::min_element(orders.begin(), orders.end()) < 1)
    throw UsageError("VAR orders must be positive");
  return top;
}

}  // namespace

const char* to_string(TuningMethod method) { return method == TuningMethod::Ebic ? "ebic" : "cv"; }

std::vector<FoldBounds> make_folds(Eigen::Index n, int L, Eigen::Index min_len) {
  if (L < 1) throw UsageError("number of folds must be positive");
  std::vector<FoldBounds> folds;
  const Eigen::Index width = ceil_div(n, L);
  Eigen::Index prev = 0;
  for (int l = 1; l <= L; ++l) {
    const Eigen::Index cur = std::min<Eigen::Index>(l * width, n);
    FoldBounds f;
    f.train_begin = prev;
    f.train_end = ceil_div(prev + cur, 2);
    f.test_begin = f.train_end;
    f.test_end = cur;
    if (f.train_end - f.train_begin < min_len || f.test_end - f.test_begin < min_len)
      throw DimensionError("fold " + std::to_string(l) + " is too short for the requested lags");
    folds.push_back(f);
    prev = cur;
  }
  return folds;
}

std::vector<double> geometric_grid(double top, int len) {
  if (len < 1) throw UsageError("grid length must be positive");
  if (!(top > 0.0) || !std::isfinite(top)) throw SelectionError("degenerate tuning grid (zero top value)");
  std::vector<double> grid(len);
  for (int i = 0; i < len; ++i)
    grid[i] = len == 1 ? top : top * std::pow(100.0, -static_cast<double>(i) / (len - 1));
  return grid;
}

std::vector<double> default_lambda_grid(const YuleWalkerSystem& sys, VarMethod method, int path_length) {
  const double g = sys.g.cwiseAbs().maxCoeff();
  return geometric_grid(method == VarMethod::Lasso ? 2.0 * g : g, path_length);
}

std::vector<double> default_eta_grid(const MatrixXd& Gamma, int path_length) {
  return geometric_grid(Gamma.cwiseAbs().maxCoeff(), path_length);
}

std::vector<double> default_eta2_grid(const MatrixXd& Gamma, const AclimePilot& pilot, int path_length) {
  double top = 0.0;
  for (Eigen::Index i = 0; i < Gamma.rows(); ++i) {
    const double prod = Gamma(i, i) * pilot.delta_hat(i);
    if (prod > 0.0) top = std::max(top, 1.0 / std::sqrt(prod));
  }
  return geometric_grid(top, path_length);
}

VarFit estimate_var(const YuleWalkerSystem& sys, VarMethod method, double lambda, const FistaOptions& fista) {
  return method == VarMethod::Lasso ? lasso_fista(sys, lambda, fista) : dantzig_lp(sys, lambda);
}

double prediction_score(const MatrixXd& gamma0, const YuleWalkerSystem& sys, const MatrixXd& beta) {
  const double cross = (beta.transpose() * sys.g).trace();
  return gamma0.trace() - 2.0 * cross + (beta.transpose() * sys.G * beta).trace();
}

TuningResult cv_var(const TimeSeriesPanel& panel, const FactorArgs& factor, const VarTuningOptions& options) {
  const int dmax = max_order(options.orders);
  TuningResult res;
  res.method = TuningMethod::Cv;
  res.orders = options.orders;
  res.n_folds = options.folds;
  res.folds = make_folds(panel.n(), options.folds, dmax + 2);
  res.grid_lambda = options.lambdas;
  if (res.grid_lambda.empty()) {
    const FactorAdjustment full = factor_adjust(panel, factor.kind, factor.q, factor.bandwidth, dmax);
    res.grid_lambda = default_lambda_grid(build_yule_walker(full.acv_xi, dmax), options.method,
                                          options.path_length);
  }
  const auto nl = static_cast<Eigen::Index>(res.grid_lambda.size());
  const auto no = static_cast<Eigen::Index>(res.orders.size());
  res.score = MatrixXd::Zero(nl, no);

  for (const FoldBounds& f : res.folds) {
    const TimeSeriesPanel train = segment(panel, f.train_begin, f.train_end);
    const TimeSeriesPanel test = segment(panel, f.test_begin, f.test_end);
    const FactorAdjustment fa_tr = factor_adjust(train, factor.kind, factor.q, factor.bandwidth, dmax);
    const FactorAdjustment fa_te = factor_adjust(test, factor.kind, factor.q, factor.bandwidth, dmax);
    for (Eigen::Index j = 0; j < no; ++j) {
      const int b = res.orders[j];
      const YuleWalkerSystem sys_tr = build_yule_walker(fa_tr.acv_xi, b);
      const YuleWalkerSystem sys_te = build_yule_walker(fa_te.acv_xi, b);
      for (Eigen::Index i = 0; i < nl; ++i) {
        const VarFit fit = estimate_var(sys_tr, options.method, res.grid_lambda[i], options.fista);
        res.score(i, j) += prediction_score(fa_te.acv_xi.matrices[0], sys_te, fit.beta);
      }
    }
  }

  // Smaller order first, then larger lambda: strict improvement required.
  double best = kInf;
  for (Eigen::Index j = 0; j < no; ++j) {
    for (Eigen::Index i = 0; i < nl; ++i) {
      if (res.score(i, j) < best) {
        best = res.score(i, j);
        res.lambda_hat = res.grid_lambda[i];
        res.d_hat = res.orders[j];
      }
    }
  }
  if (!std::isfinite(best)) throw SelectionError("cv: no finite score");
  return res;
}

double log_binomial(double n, double k) {
  if (k < 0.0 || k > n) throw DimensionError("log_binomial: k out of range");
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

TuningResult ebic_var(const TimeSeriesPanel& panel, const FactorArgs& factor, const VarTuningOptions& options) {
  const int dmax = max_order(options.orders);
  if (options.alpha < 0.0 || options.alpha > 1.0) throw UsageError("eBIC alpha must lie in [0, 1]");
  TuningResult res;
  res.method = TuningMethod::Ebic;
  res.orders = options.orders;
  res.alpha = options.alpha;
  res.n_folds = 0;
  const FactorAdjustment full = factor_adjust(panel, factor.kind, factor.q, factor.bandwidth, dmax);
  res.grid_lambda = options.lambdas;
  if (res.grid_lambda.empty())
    res.grid_lambda = default_lambda_grid(build_yule_walker(full.acv_xi, dmax), options.method,
                                          options.path_length);
  const auto nl = static_cast<Eigen::Index>(res.grid_lambda.size());
  const auto no = static_cast<Eigen::Index>(res.orders.size());
  res.score = MatrixXd::Zero(nl, no);
  res.support = MatrixXd::Zero(nl, no);
  const double n = static_cast<double>(panel.n());
  const double p = static_cast<double>(panel.p());
  const MatrixXd& gamma0 = full.acv_xi.matrices[0];

  for (Eigen::Index j = 0; j < no; ++j) {
    const int b = res.orders[j];
    const YuleWalkerSystem sys = build_yule_walker(full.acv_xi, b);
    for (Eigen::Index i = 0; i < nl; ++i) {
      const VarFit fit = estimate_var(sys, options.method, res.grid_lambda[i], options.fista);
      MatrixXd beta = fit.beta;
      if ((beta.array() != 0.0).any()) {
        const ThresholdSelection ts = select_threshold(beta, static_cast<long long>(p * p * b));
        beta = threshold_matrix(beta, ts.t_ada);
      }
      const double s = static_cast<double>((beta.array() != 0.0).count());
      res.support(i, j) = s;
      const double loss = std::max(prediction_score(gamma0, sys, beta), 1e-300);
      res.score(i, j) = 0.5 * n * std::log(loss) + s * std::log(n) +
                        2.0 * options.alpha * log_binomial(b * p * p, s);
    }
  }
  double best = kInf;
  for (Eigen::Index j = 0; j < no; ++j)
    for (Eigen::Index i = 0; i < nl; ++i)
      if (res.score(i, j) < best) {
        best = res.score(i, j);
        res.lambda_hat = res.grid_lambda[i];
        res.d_hat = res.orders[j];
      }
  if (!std::isfinite(best)) throw SelectionError("ebic: no finite score");
  return res;
}

double burg_divergence(const MatrixXd& Delta, const MatrixXd& Gamma) {
  const MatrixXd m = Delta * Gamma;
  const Eigen::PartialPivLU<MatrixXd> lu(m);
  const MatrixXd& u = lu.matrixLU();
  double logdet = 0.0;
  double sign = lu.permutationP().determinant();
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    const double d = u(i, i);
    if (d == 0.0 || !std::isfinite(d)) return kInf;
    if (d < 0.0) sign = -sign;
    logdet += std::log(std::abs(d));
  }
  if (sign <= 0.0) return kInf;
  return m.trace() - logdet - static_cast<double>(m.rows());
}

EtaTuningResult cv_delta(const TimeSeriesPanel& panel, const FactorArgs& factor, const VarFit& fit,
                         const EtaTuningOptions& options) {
  const int d = fit.order;
  EtaTuningResult res;
  res.adaptive = options.adaptive;
  res.folds = make_folds(panel.n(), options.folds, d + 2);
  res.grid_eta = options.etas;
  if (res.grid_eta.empty()) {
    const FactorAdjustment full = factor_adjust(panel, factor.kind, factor.q, factor.bandwidth, d);
    const MatrixXd gamma = innovation_covariance(full.acv_xi, fit);
    res.grid_eta = options.adaptive
                       ? default_eta2_grid(gamma, aclime_pilot(gamma, panel.n()), options.path_length)
                       : default_eta_grid(gamma, options.path_length);
  }
  res.score.assign(res.grid_eta.size(), 0.0);

  for (const FoldBounds& f : res.folds) {
    const TimeSeriesPanel train = segment(panel, f.train_begin, f.train_end);
    const TimeSeriesPanel test = segment(panel, f.test_begin, f.test_end);
    const MatrixXd g_tr = innovation_covariance(
        factor_adjust(train, factor.kind, factor.q, factor.bandwidth, d).acv_xi, fit);
    const MatrixXd g_te = innovation_covariance(
        factor_adjust(test, factor.kind, factor.q, factor.bandwidth, d).acv_xi, fit);
    AclimePilot pilot;
    bool pilot_ok = true;
    if (options.adaptive) {
      try {
        pilot = aclime_pilot(g_tr, train.n());
      } catch (const Error&) {
        pilot_ok = false;
      }
    }
    for (std::size_t i = 0; i < res.grid_eta.size(); ++i) {
      if (!std::isfinite(res.score[i])) continue;
      double s = kInf;
      if (pilot_ok) {
        try {
          const PrecisionFit pf = options.adaptive ? aclime(g_tr, pilot, res.grid_eta[i], train.n())
                                                   : clime(g_tr, res.grid_eta[i]);
          s = burg_divergence(pf.Delta, g_te);
        } catch (const SolverError&) {
          s = kInf;
        }
      }
      res.score[i] += s;
    }
  }
  double best = kInf;
  for (std::size_t i = 0; i < res.grid_eta.size(); ++i)
    if (res.score[i] < best) {
      best = res.score[i];
      res.eta_hat = res.grid_eta[i];
    }
  if (!std::isfinite(best))
    throw SelectionError("eta cross-validation: every candidate was excluded; widen the grid");
  return res;
}

}  // namespace fnets
