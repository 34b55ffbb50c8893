#include "fnets/pipeline.hpp"

#include <algorithm>
#include <sstream>

#include "fnets/error.hpp"

namespace fnets {

namespace {

std::size_t count_nonzero(const MatrixXd& m) { return static_cast<std::size_t>((m.array() != 0.0).count()); }

}  // namespace

FnetsModel fit_fnets(const TimeSeriesPanel& panel, const FitOptions& options) {
  if (options.orders.empty()) throw UsageError("no candidate VAR orders");
  const int dmax = *std::max_element(options.orders.begin(), options.orders.end());
  FnetsModel model;
  model.kind = options.kind;
  model.n = panel.n();
  model.mean_x = panel.mean_x;
  model.names = panel.names;
  model.seed = options.seed;

  if (options.q >= 0) {
    if (options.q > panel.p()) throw UsageError("factor number exceeds the number of variables");
    model.q = options.q;
  } else {
    IcOptions ic;
    ic.variant = options.ic_variant;
    model.factor_selection = options.q_method == FactorMethod::Er ? select_q_er(panel, options.kind)
                                                                  : select_q_ic(panel, options.kind, ic);
    model.q = model.factor_selection->q_hat;
  }
  const FactorAdjustment fa = factor_adjust(panel, options.kind, model.q, options.bandwidth, dmax);
  model.bandwidth = fa.bandwidth;
  const FactorArgs fargs{options.kind, model.q, options.bandwidth};

  VarTuningOptions vt;
  vt.method = options.method;
  vt.orders = options.orders;
  vt.folds = options.folds;
  vt.path_length = options.path_length;
  vt.alpha = options.alpha;
  vt.fista = options.fista;
  model.var_tuning = options.tuning == TuningMethod::Ebic ? ebic_var(panel, fargs, vt) : cv_var(panel, fargs, vt);

  const YuleWalkerSystem sys = build_yule_walker(fa.acv_xi, model.var_tuning->d_hat);
  model.var = estimate_var(sys, options.method, model.var_tuning->lambda_hat, options.fista);
  model.nonzero_before_threshold = count_nonzero(model.var.beta);
  if (options.threshold == ThresholdMode::Adaptive && model.nonzero_before_threshold > 0) {
    const Eigen::Index p = panel.p();
    model.var_threshold = select_threshold(model.var.beta, static_cast<long long>(p * p * model.var.order));
    model.var.threshold = model.var_threshold->t_ada;
  } else if (options.threshold == ThresholdMode::Value) {
    if (options.threshold_value < 0.0) throw UsageError("threshold must be non-negative");
    model.var.threshold = options.threshold_value;
  }
  if (model.var.threshold > 0.0) model.var.beta = threshold_matrix(model.var.beta, model.var.threshold);
  model.var.Gamma_hat = innovation_covariance(fa.acv_xi, model.var);

  model.has_lrpc = options.lrpc;
  if (options.lrpc) {
    EtaTuningOptions et;
    et.adaptive = options.lrpc_adaptive;
    et.folds = options.folds;
    et.path_length = options.path_length;
    model.eta_tuning = cv_delta(panel, fargs, model.var, et);
    const double eta = model.eta_tuning->eta_hat;
    model.precision = options.lrpc_adaptive ? aclime(model.var.Gamma_hat, eta, panel.n())
                                            : clime(model.var.Gamma_hat, eta);
    try {
      longrun_precision(model.precision, model.var);
    } catch (const DataError& e) {
      throw NumericalError(std::string("long-run precision: ") + e.what());
    }
  }
  return model;
}

std::string fit_report(const FnetsModel& model) {
  std::ostringstream out;
  const Eigen::Index p = model.var.p();
  out << "Factor-adjusted vector autoregressive model with\n";
  out << "n: " << model.n << ", p: " << p << "\n";
  out << "Factor-driven component\n";
  out << "Factor model: " << to_string(model.kind) << "\n";
  out << "Factor number: " << model.q << "\n";
  if (model.factor_selection) {
    const auto& s = *model.factor_selection;
    if (s.method == FactorMethod::Ic)
      out << "Factor number selection: IC" << s.ic_variant << " (c = " << s.c_hat << ")\n";
    else
      out << "Factor number selection: eigenvalue ratio\n";
  }
  if (model.kind == ModelKind::Unrestricted) out << "Bandwidth: " << model.bandwidth << "\n";
  out << "Idiosyncratic component\n";
  out << "Estimation method: " << to_string(model.var.method) << "\n";
  if (model.var_tuning) out << "Tuning method: " << to_string(model.var_tuning->method) << "\n";
  out << "Lambda: " << model.var.lambda << "\n";
  out << "VAR order: " << model.var.order << "\n";
  if (model.var.threshold > 0.0)
    out << "Threshold: " << model.var.threshold << "\n";
  else
    out << "Threshold: FALSE\n";
  const auto nnz = count_nonzero(model.var.beta);
  out << "Non-zero entries: " << nnz << "/" << p * p * model.var.order << "\n";
  if (model.has_lrpc) {
    out << "Long-run partial correlations\n";
    out << "Precision estimator: " << (model.precision.adaptive ? "aclime" : "clime") << "\n";
    out << "Eta: " << model.precision.eta << "\n";
  }
  return out.str();
}

int forecast_factor_number(const FnetsModel& model, const TimeSeriesPanel& panel) {
  if (model.kind == ModelKind::Restricted) return model.q;
  if (model.q == 0) return 0;
  return select_q_ic(panel, ModelKind::Restricted).q_hat;
}

ForecastResult forecast_fnets(const FnetsModel& model, const TimeSeriesPanel& panel, int h,
                              const MatrixXd* newdata, int r) {
  if (h < 1) throw UsageError("forecast horizon must be at least 1");
  if (panel.p() != model.var.p()) throw DimensionError("forecast: panel dimension does not match the model");
  if (r < 0) r = forecast_factor_number(model, panel);
  const FactorAdjustment fa = factor_adjust_restricted(panel, r, std::max(h, 1));
  MatrixXd x = panel.values;
  if (newdata) {
    if (newdata->rows() != panel.p()) throw DimensionError("forecast: new data dimension does not match");
    if (newdata->cols() < model.var.order) throw DimensionError("forecast: new data shorter than the VAR order");
    if (!newdata->allFinite()) throw DataError("forecast: new data contains non-finite values");
    x = newdata->colwise() - model.mean_x;
  }
  return forecast_components(model.var, fa.acv_chi, r, x, model.mean_x, h);
}

}  // namespace fnets
