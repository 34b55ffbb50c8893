#include "fnets/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fnets/error.hpp"
#include "fnets/factor_number.hpp"
#include "fnets/model_document.hpp"
#include "fnets/networks.hpp"
#include "fnets/pipeline.hpp"
#include "fnets/simulate.hpp"

namespace fnets {

namespace {

using nlohmann::json;

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot write " + path);
    f << content;
    f.flush();
    if (!f) throw UsageError("cannot write " + path);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw UsageError("cannot write " + path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-")
    out << content;
  else
    write_atomic(path, content);
}

std::vector<std::string> column_names(const std::vector<std::string>& names, Eigen::Index p) {
  if (static_cast<Eigen::Index>(names.size()) == p) return names;
  std::vector<std::string> out;
  for (Eigen::Index i = 0; i < p; ++i) out.push_back("x" + std::to_string(i + 1));
  return out;
}

// Rows are time points; `m` is p x n.
std::string panel_csv(const MatrixXd& m, const std::vector<std::string>& names) {
  std::string s;
  const auto header = column_names(names, m.rows());
  for (std::size_t i = 0; i < header.size(); ++i) s += (i ? "," : "") + header[i];
  s += '\n';
  for (Eigen::Index t = 0; t < m.cols(); ++t) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) s += (i ? "," : "") + format_double(m(i, t));
    s += '\n';
  }
  return s;
}

json matrix_json(const MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

struct FitArgs {
  std::string data, out, cv_csv, threshold_csv;
  bool transpose = false, no_center = false, restricted = false, er = false;
  int q = -1, ic_variant = 5, folds = 1, path_length = 10, bandwidth = -1;
  std::vector<int> orders = {1};
  std::string method = "lasso", tuning = "cv", threshold = "off";
  double alpha = 0.0;
  bool no_lrpc = false, lrpc_adaptive = false;
  std::uint64_t seed = 111;
};

FitOptions to_options(const FitArgs& a) {
  FitOptions o;
  o.kind = a.restricted ? ModelKind::Restricted : ModelKind::Unrestricted;
  if (a.er && a.q >= 0) throw UsageError("--q and --er cannot be combined");
  o.q = a.q;
  o.q_method = a.er ? FactorMethod::Er : FactorMethod::Ic;
  if (a.ic_variant < 1 || a.ic_variant > 6) throw UsageError("--ic-variant must be in 1..6");
  o.ic_variant = a.ic_variant;
  o.bandwidth = a.bandwidth;
  if (a.orders.empty()) throw UsageError("--var-order needs at least one value");
  for (int d : a.orders)
    if (d < 1) throw UsageError("--var-order values must be positive");
  o.orders = a.orders;
  if (a.method == "lasso")
    o.method = VarMethod::Lasso;
  else if (a.method == "ds")
    o.method = VarMethod::Dantzig;
  else
    throw UsageError("--method must be lasso or ds");
  if (a.tuning == "cv")
    o.tuning = TuningMethod::Cv;
  else if (a.tuning == "ebic")
    o.tuning = TuningMethod::Ebic;
  else
    throw UsageError("--tuning must be cv or ebic");
  o.alpha = a.alpha;
  if (a.folds < 1) throw UsageError("--folds must be positive");
  o.folds = a.folds;
  if (a.path_length < 1) throw UsageError("--path-length must be at least 1");
  o.path_length = a.path_length;
  if (a.threshold == "off") {
    o.threshold = ThresholdMode::Off;
  } else if (a.threshold == "adaptive") {
    o.threshold = ThresholdMode::Adaptive;
  } else {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(a.threshold, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != a.threshold.size() || !(v >= 0.0))
      throw UsageError("--threshold must be off, adaptive or a non-negative number");
    o.threshold = ThresholdMode::Value;
    o.threshold_value = v;
  }
  o.lrpc = !a.no_lrpc;
  o.lrpc_adaptive = a.lrpc_adaptive;
  o.seed = a.seed;
  return o;
}

int cmd_fit(const FitArgs& a, std::ostream& out) {
  const FitOptions options = to_options(a);
  const TimeSeriesPanel panel = load_panel(a.data, a.transpose, !a.no_center);
  const FnetsModel model = fit_fnets(panel, options);
  out << fit_report(model);
  if (!a.out.empty()) {
    Provenance prov;
    prov.seed = a.seed;
    prov.input_path = a.data;
    prov.created = utc_timestamp();
    write_atomic(a.out, serialize_model(model, prov));
  }
  if (!a.cv_csv.empty() && model.var_tuning) {
    const TuningResult& t = *model.var_tuning;
    std::string s = "lambda,order,score\n";
    for (std::size_t i = 0; i < t.grid_lambda.size(); ++i)
      for (std::size_t j = 0; j < t.orders.size(); ++j)
        s += format_double(t.grid_lambda[i]) + "," + std::to_string(t.orders[j]) + "," +
             format_double(t.score(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) + "\n";
    write_atomic(a.cv_csv, s);
  }
  if (!a.threshold_csv.empty() && model.var_threshold) {
    const ThresholdSelection& t = *model.var_threshold;
    std::string s = "k,t,ratio,cusum\n";
    for (std::size_t k = 0; k < t.candidates.size(); ++k) {
      s += std::to_string(k + 1) + "," + format_double(t.candidates[k]) + "," +
           format_double(t.ratio[k]) + ",";
      // CUSUM is defined for k = 2..M-1.
      if (k >= 1 && k - 1 < t.cusum.size()) s += format_double(t.cusum[k - 1]);
      s += "\n";
    }
    write_atomic(a.threshold_csv, s);
  }
  return 0;
}

struct SimArgs {
  Eigen::Index n = 500, p = 50;
  int q = 2, order = 1, burn_in = 100;
  std::string factor = "unrestricted", innovation = "identity";
  bool heavy = false;
  double link_prob = -1.0, coeff = 0.275;
  std::uint64_t seed = 111;
  std::string out, truth;
};

int cmd_simulate(const SimArgs& a, std::ostream& out) {
  SimSpec spec;
  spec.n = a.n;
  spec.p = a.p;
  spec.q = a.q;
  spec.var_order = a.order;
  spec.link_prob = a.link_prob;
  spec.coeff_value = a.coeff;
  spec.heavy_tails = a.heavy;
  spec.seed = a.seed;
  spec.burn_in = a.burn_in;
  if (a.innovation == "identity")
    spec.innovation = InnovationKind::Identity;
  else if (a.innovation == "banded")
    spec.innovation = InnovationKind::Banded;
  else
    throw UsageError("--innovation must be identity or banded");
  if (a.n < 2 || a.p < 1 || a.order < 1 || a.q < 0 || a.burn_in < 0)
    throw UsageError("simulate: invalid dimensions");
  if (a.factor != "unrestricted" && a.factor != "restricted" && a.factor != "none")
    throw UsageError("--factor must be unrestricted, restricted or none");

  Rng rng(spec.seed);
  const VarSimulation var = sim_var(spec, rng);
  MatrixXd data = var.data;
  json truth;
  if (a.factor != "none" && a.q > 0) {
    const FactorSimulation f =
        a.factor == "restricted" ? sim_restricted(spec, rng) : sim_unrestricted(spec, rng);
    data += f.data;
    truth["chi"] = matrix_json(f.data);
  }
  truth["factor"] = a.factor;
  truth["q"] = a.factor == "none" ? 0 : a.q;
  truth["seed"] = spec.seed;
  json lags = json::array();
  for (const MatrixXd& A : var.A) lags.push_back(matrix_json(A));
  truth["A"] = std::move(lags);
  truth["Delta"] = matrix_json(var.Delta);
  truth["Gamma"] = matrix_json(var.Gamma);
  const MatrixXd a1 = [&] {
    MatrixXd s = MatrixXd::Identity(spec.p, spec.p);
    for (const MatrixXd& A : var.A) s -= A;
    return s;
  }();
  MatrixXd omega = 2.0 * M_PI * a1.transpose() * var.Delta * a1;
  truth["Omega"] = matrix_json(0.5 * (omega + omega.transpose()));

  emit(a.out, panel_csv(data, {}), out);
  if (!a.truth.empty()) write_atomic(a.truth, truth.dump(1) + "\n");
  return 0;
}

struct FactorsArgs {
  std::string data, csv, method = "ic";
  bool transpose = false, no_center = false, restricted = false;
  int ic_variant = 5, q_max = -1;
  bool all_variants = false;
};

int cmd_factors(const FactorsArgs& a, std::ostream& out) {
  const ModelKind kind = a.restricted ? ModelKind::Restricted : ModelKind::Unrestricted;
  const TimeSeriesPanel panel = load_panel(a.data, a.transpose, !a.no_center);
  out << "Factor number selection\n";
  out << "Model: " << to_string(kind) << "\n";
  if (a.method == "er") {
    const FactorNumberSelection sel = select_q_er(panel, kind, a.q_max);
    out << "Method: ER\n";
    out << "q_max: " << sel.q_max << "\n";
    out << "ER curve:";
    for (double v : sel.er_curve) out << " " << format_double(v);
    out << "\n";
    out << "Factor number: " << sel.q_hat << "\n";
    if (!a.csv.empty()) {
      std::string s = "b,er\n";
      for (std::size_t b = 0; b < sel.er_curve.size(); ++b)
        s += std::to_string(b + 1) + "," + format_double(sel.er_curve[b]) + "\n";
      write_atomic(a.csv, s);
    }
    return 0;
  }
  if (a.method != "ic") throw UsageError("--method must be ic or er");
  if (a.ic_variant < 1 || a.ic_variant > 6) throw UsageError("--ic-variant must be in 1..6");
  out << "Method: IC\n";
  std::vector<int> variants;
  if (a.all_variants)
    variants = {1, 2, 3, 4, 5, 6};
  else
    variants = {a.ic_variant};
  std::string csv = "variant,c,q,s\n";
  for (int v : variants) {
    IcOptions o;
    o.variant = v;
    o.q_max = a.q_max;
    const FactorNumberSelection sel = select_q_ic(panel, kind, o);
    out << "IC" << v << ": q_hat = " << sel.q_hat << ", c = " << format_double(sel.c_hat)
        << (sel.fallback ? " (no second stability interval)" : "") << "\n";
    if (v == a.ic_variant || variants.size() == 1)
      out << "Factor number: " << sel.q_hat << "\n";
    for (std::size_t i = 0; i < sel.c_grid.size(); ++i)
      csv += std::to_string(v) + "," + format_double(sel.c_grid[i]) + "," +
             std::to_string(sel.q_by_c[i]) + "," + format_double(sel.s_of_c[i]) + "\n";
  }
  if (!a.csv.empty()) write_atomic(a.csv, csv);
  return 0;
}

struct ForecastArgs {
  std::string model, data, newdata, out;
  bool transpose = false, no_center = false;
  int ahead = 1, r = -1;
};

int cmd_forecast(const ForecastArgs& a, std::ostream& out) {
  const FnetsModel model = parse_model(read_file(a.model));
  const TimeSeriesPanel panel = load_panel(a.data, a.transpose, !a.no_center);
  ForecastResult res;
  if (!a.newdata.empty()) {
    const TimeSeriesPanel nd = load_panel(a.newdata, a.transpose, false);
    res = forecast_fnets(model, panel, a.ahead, &nd.values, a.r);
  } else {
    res = forecast_fnets(model, panel, a.ahead, nullptr, a.r);
  }
  const std::vector<std::string> names = model.names.empty() ? panel.names : model.names;
  emit(a.out, panel_csv(res.forecast.transpose(), names), out);
  return 0;
}

struct ExportArgs {
  std::string model, type = "granger", format = "dot", out;
  double threshold = 0.0;
};

int cmd_export(const ExportArgs& a, std::ostream& out) {
  const FnetsModel model = parse_model(read_file(a.model));
  const NetworkKind kind = network_kind_from_string(a.type);
  const ExportFormat format = export_format_from_string(a.format);
  if (!(a.threshold >= 0.0)) throw UsageError("--threshold must be non-negative");
  NetworkGraph g;
  if (kind == NetworkKind::Granger) {
    g = extract_granger(model.var, a.threshold, model.names);
  } else {
    if (!model.has_lrpc) throw UsageError("model has no precision estimate; refit without --no-lrpc");
    const MatrixXd& m = kind == NetworkKind::Pc ? model.precision.pc : model.precision.lrpc;
    g = extract_undirected(m, a.threshold, kind, model.names);
  }
  emit(a.out, export_graph(g, format), out);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Factor-adjusted VAR network estimation and forecasting"};
  app.name("fnets");
  app.require_subcommand(1);

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Estimate the model from a CSV panel");
  fit_cmd->add_option("--data,data", fit.data, "Input CSV (rows are time points)")->required();
  fit_cmd->add_flag("--transpose", fit.transpose, "Rows of the CSV are variables");
  fit_cmd->add_flag("--no-center", fit.no_center, "Do not subtract variable means");
  fit_cmd->add_flag("--restricted", fit.restricted, "Static (restricted) factor model");
  fit_cmd->add_option("--q", fit.q, "Number of factors; selected from the data when absent");
  fit_cmd->add_option("--ic-variant", fit.ic_variant, "Information criterion 1..6");
  fit_cmd->add_flag("--er", fit.er, "Select the factor number by eigenvalue ratio");
  fit_cmd->add_option("--var-order", fit.orders, "Candidate VAR orders")->delimiter(',');
  fit_cmd->add_option("--method", fit.method, "lasso or ds");
  fit_cmd->add_option("--tuning", fit.tuning, "cv or ebic");
  fit_cmd->add_option("--alpha", fit.alpha, "eBIC parameter");
  fit_cmd->add_option("--folds", fit.folds, "Number of CV folds");
  fit_cmd->add_option("--path-length", fit.path_length, "Length of the tuning grids");
  fit_cmd->add_option("--threshold", fit.threshold, "off, adaptive or a value");
  fit_cmd->add_flag("--no-lrpc", fit.no_lrpc, "Skip the precision estimation");
  fit_cmd->add_flag("--lrpc-adaptive", fit.lrpc_adaptive, "Use the adaptive estimator");
  fit_cmd->add_option("--bandwidth", fit.bandwidth, "Kernel bandwidth");
  fit_cmd->add_option("--seed", fit.seed, "Random seed");
  fit_cmd->add_option("--out", fit.out, "Model document (JSON)");
  fit_cmd->add_option("--cv-csv", fit.cv_csv, "Write the tuning score surface");
  fit_cmd->add_option("--threshold-csv", fit.threshold_csv, "Write the threshold curve");

  SimArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Generate a panel with known truths");
  sim_cmd->add_option("--n", sim.n, "Number of time points");
  sim_cmd->add_option("--p", sim.p, "Number of variables");
  sim_cmd->add_option("--q", sim.q, "Number of factors");
  sim_cmd->add_option("--var-order", sim.order, "Order of the idiosyncratic VAR");
  sim_cmd->add_option("--factor", sim.factor, "unrestricted, restricted or none");
  sim_cmd->add_option("--innovation", sim.innovation, "identity or banded");
  sim_cmd->add_flag("--heavy", sim.heavy, "Scaled t5 innovations");
  sim_cmd->add_option("--link-prob", sim.link_prob, "Edge probability of the VAR graph");
  sim_cmd->add_option("--coeff", sim.coeff, "Nonzero VAR coefficient");
  sim_cmd->add_option("--burn-in", sim.burn_in, "Discarded initial points");
  sim_cmd->add_option("--seed", sim.seed, "Random seed");
  sim_cmd->add_option("--out", sim.out, "Panel CSV (stdout when absent)");
  sim_cmd->add_option("--truth", sim.truth, "Truth JSON");

  FactorsArgs fac;
  auto* fac_cmd = app.add_subcommand("factors", "Select the number of factors");
  fac_cmd->add_option("--data,data", fac.data, "Input CSV")->required();
  fac_cmd->add_flag("--transpose", fac.transpose, "Rows of the CSV are variables");
  fac_cmd->add_flag("--no-center", fac.no_center, "Do not subtract variable means");
  fac_cmd->add_flag("--restricted", fac.restricted, "Static (restricted) factor model");
  fac_cmd->add_option("--method", fac.method, "ic or er");
  fac_cmd->add_option("--ic-variant", fac.ic_variant, "Information criterion 1..6");
  fac_cmd->add_flag("--all-variants", fac.all_variants, "Report all six criteria");
  fac_cmd->add_option("--q-max", fac.q_max, "Largest factor number considered");
  fac_cmd->add_option("--csv", fac.csv, "Write (c, q, S) or the ER curve");

  ForecastArgs fc;
  auto* fc_cmd = app.add_subcommand("forecast", "Forecast from a fitted model");
  fc_cmd->add_option("--model", fc.model, "Model document")->required();
  fc_cmd->add_option("--data", fc.data, "Training panel CSV")->required();
  fc_cmd->add_option("--newdata", fc.newdata, "Panel to condition on");
  fc_cmd->add_flag("--transpose", fc.transpose, "Rows of the CSV are variables");
  fc_cmd->add_flag("--no-center", fc.no_center, "Do not subtract variable means");
  fc_cmd->add_option("--ahead", fc.ahead, "Forecast horizon");
  fc_cmd->add_option("--r", fc.r, "Static factor number for the common forecast");
  fc_cmd->add_option("--out", fc.out, "Forecast CSV (stdout when absent)");

  ExportArgs ex;
  auto* ex_cmd = app.add_subcommand("export", "Export a network");
  ex_cmd->add_option("--model", ex.model, "Model document")->required();
  ex_cmd->add_option("--type", ex.type, "granger, pc or lrpc");
  ex_cmd->add_option("--format", ex.format, "dot, edgelist, matrix or json");
  ex_cmd->add_option("--threshold", ex.threshold, "Edge threshold");
  ex_cmd->add_option("--out", ex.out, "Output file (stdout when absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << "fnets 1.0\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "fnets: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*fit_cmd) return cmd_fit(fit, out);
    if (*sim_cmd) return cmd_simulate(sim, out);
    if (*fac_cmd) return cmd_factors(fac, out);
    if (*fc_cmd) return cmd_forecast(fc, out);
    if (*ex_cmd) return cmd_export(ex, out);
  } catch (const Error& e) {
    err << "fnets: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "fnets: " << e.what() << "\n";
    return 4;
  }
  return 2;
}

}  // namespace fnets
