#include "fnets/model_document.hpp"

#include <chrono>
#include <ctime>

#include <json.hpp>

#include "fnets/error.hpp"

namespace fnets {

namespace {

using nlohmann::json;

json matrix_json(const MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

MatrixXd matrix_from(const json& j, Eigen::Index cols_hint = -1) {
  const auto r = static_cast<Eigen::Index>(j.size());
  const Eigen::Index c = r ? static_cast<Eigen::Index>(j.at(0).size()) : std::max<Eigen::Index>(cols_hint, 0);
  MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    if (static_cast<Eigen::Index>(j.at(i).size()) != c) throw FormatError("ragged matrix in model document");
    for (Eigen::Index k = 0; k < c; ++k) m(i, k) = j.at(i).at(k).get<double>();
  }
  return m;
}

json vector_json(const VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

VectorXd vector_from(const json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string serialize_model(const FnetsModel& model, const Provenance& prov) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["model_kind"] = to_string(model.kind);
  j["n"] = model.n;
  j["p"] = model.var.p();
  j["q_or_r"] = model.q;
  j["bandwidth"] = model.bandwidth;
  j["names"] = model.names;
  if (model.factor_selection) {
    const auto& s = *model.factor_selection;
    j["factor_selection"] = {{"method", s.method == FactorMethod::Ic ? "ic" : "er"},
                             {"ic_variant", s.ic_variant},
                             {"q_hat", s.q_hat},
                             {"q_max", s.q_max},
                             {"c_hat", s.c_hat}};
  }
  json var;
  var["order"] = model.var.order;
  var["method"] = to_string(model.var.method);
  var["lambda"] = model.var.lambda;
  var["beta"] = matrix_json(model.var.beta);
  var["Gamma_hat"] = matrix_json(model.var.Gamma_hat);
  var["threshold"] = model.var.threshold;
  var["nonzero_before_threshold"] = model.nonzero_before_threshold;
  if (model.var_tuning)
    var["tuning"] = {{"method", to_string(model.var_tuning->method)},
                     {"lambda_hat", model.var_tuning->lambda_hat},
                     {"d_hat", model.var_tuning->d_hat},
                     {"folds", model.var_tuning->n_folds},
                     {"alpha", model.var_tuning->alpha}};
  j["var"] = var;
  if (model.has_lrpc) {
    j["lrpc"] = {{"eta", model.precision.eta},
                 {"adaptive", model.precision.adaptive},
                 {"Delta", matrix_json(model.precision.Delta)},
                 {"Omega", matrix_json(model.precision.Omega)}};
  } else {
    j["lrpc"] = nullptr;
  }
  j["mean_x"] = vector_json(model.mean_x);
  j["provenance"] = {{"seed", prov.seed}, {"input", prov.input_path}, {"created", prov.created}};
  return j.dump(2) + "\n";
}

FnetsModel parse_model(const std::string& text, Provenance* prov) {
  FnetsModel model;
  try {
    const json j = json::parse(text);
    if (j.at("schema_version").get<int>() != kSchemaVersion)
      throw UsageError("model document has unsupported schema version");
    const std::string kind = j.at("model_kind").get<std::string>();
    if (kind != "restricted" && kind != "unrestricted") throw UsageError("unknown model kind: " + kind);
    model.kind = kind == "restricted" ? ModelKind::Restricted : ModelKind::Unrestricted;
    model.n = j.at("n").get<Eigen::Index>();
    model.q = j.at("q_or_r").get<int>();
    model.bandwidth = j.at("bandwidth").get<int>();
    model.names = j.at("names").get<std::vector<std::string>>();
    const auto p = j.at("p").get<Eigen::Index>();
    if (j.contains("factor_selection")) {
      const auto& s = j.at("factor_selection");
      FactorNumberSelection sel;
      sel.method = s.at("method").get<std::string>() == "er" ? FactorMethod::Er : FactorMethod::Ic;
      sel.kind = model.kind;
      sel.ic_variant = s.at("ic_variant").get<int>();
      sel.q_hat = s.at("q_hat").get<int>();
      sel.q_max = s.at("q_max").get<int>();
      sel.c_hat = s.at("c_hat").get<double>();
      model.factor_selection = sel;
    }
    const auto& var = j.at("var");
    model.var.order = var.at("order").get<int>();
    model.var.method = var.at("method").get<std::string>() == "ds" ? VarMethod::Dantzig : VarMethod::Lasso;
    model.var.lambda = var.at("lambda").get<double>();
    model.var.beta = matrix_from(var.at("beta"), p);
    model.var.Gamma_hat = matrix_from(var.at("Gamma_hat"), p);
    model.var.threshold = var.at("threshold").get<double>();
    model.nonzero_before_threshold = var.at("nonzero_before_threshold").get<std::size_t>();
    if (var.contains("tuning")) {
      const auto& t = var.at("tuning");
      TuningResult tr;
      tr.method = t.at("method").get<std::string>() == "ebic" ? TuningMethod::Ebic : TuningMethod::Cv;
      tr.lambda_hat = t.at("lambda_hat").get<double>();
      tr.d_hat = t.at("d_hat").get<int>();
      tr.n_folds = t.at("folds").get<int>();
      tr.alpha = t.at("alpha").get<double>();
      model.var_tuning = tr;
    }
    if (model.var.beta.rows() != p * model.var.order || model.var.beta.cols() != p)
      throw UsageError("model document: beta has the wrong shape");
    const auto& lr = j.at("lrpc");
    model.has_lrpc = !lr.is_null();
    if (model.has_lrpc) {
      model.precision.eta = lr.at("eta").get<double>();
      model.precision.adaptive = lr.at("adaptive").get<bool>();
      model.precision.Delta = matrix_from(lr.at("Delta"), p);
      model.precision.Omega = matrix_from(lr.at("Omega"), p);
      model.precision.A1 = a_one(model.var);
      model.precision.pc = partial_correlations(model.precision.Delta);
      model.precision.lrpc = partial_correlations(model.precision.Omega);
    }
    model.mean_x = vector_from(j.at("mean_x"));
    if (model.mean_x.size() != p) throw UsageError("model document: mean_x has the wrong length");
    const auto& pv = j.at("provenance");
    model.seed = pv.at("seed").get<std::uint64_t>();
    if (prov) {
      prov->seed = model.seed;
      prov->input_path = pv.at("input").get<std::string>();
      prov->created = pv.at("created").get<std::string>();
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed model document: ") + e.what());
  }
  return model;
}

}  // namespace fnets
