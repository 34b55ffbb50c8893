#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fnets/factor_number.hpp"
#include "fnets/forecast.hpp"
#include "fnets/panel.hpp"
#include "fnets/precision.hpp"
#include "fnets/spectral.hpp"
#include "fnets/threshold.hpp"
#include "fnets/tuning.hpp"
#include "fnets/var_estimation.hpp"

namespace fnets {

enum class ThresholdMode { Off, Adaptive, Value };

struct FitOptions {
  ModelKind kind = ModelKind::Unrestricted;
  int q = -1;  // -1: select from the data
  FactorMethod q_method = FactorMethod::Ic;
  int ic_variant = 5;
  int bandwidth = -1;
  std::vector<int> orders = {1};
  VarMethod method = VarMethod::Lasso;
  TuningMethod tuning = TuningMethod::Cv;
  double alpha = 0.0;
  int folds = 1;
  int path_length = 10;
  ThresholdMode threshold = ThresholdMode::Off;
  double threshold_value = 0.0;
  bool lrpc = true;
  bool lrpc_adaptive = false;
  std::uint64_t seed = 111;
  FistaOptions fista;
};

struct FnetsModel {
  ModelKind kind = ModelKind::Unrestricted;
  Eigen::Index n = 0;
  int q = 0;
  int bandwidth = 0;
  std::optional<FactorNumberSelection> factor_selection;
  VarFit var;
  std::optional<TuningResult> var_tuning;
  std::optional<ThresholdSelection> var_threshold;
  std::size_t nonzero_before_threshold = 0;
  bool has_lrpc = false;
  PrecisionFit precision;
  std::optional<EtaTuningResult> eta_tuning;
  VectorXd mean_x;
  std::vector<std::string> names;
  std::uint64_t seed = 111;
};

FnetsModel fit_fnets(const TimeSeriesPanel& panel, const FitOptions& options);

/// Plain-text report with "Factor number:", "VAR order:" and
/// "Non-zero entries:" lines.
std::string fit_report(const FnetsModel& model);

/// Static factor count used by the common forecast: the model's own count
/// for a restricted fit, otherwise the restricted IC selection on `panel`.
int forecast_factor_number(const FnetsModel& model, const TimeSeriesPanel& panel);

/// Forecast from the training panel, or from `newdata` (centred with the
/// model means) when given.
ForecastResult forecast_fnets(const FnetsModel& model, const TimeSeriesPanel& panel, int h,
                              const MatrixXd* newdata = nullptr, int r = -1);

}  // namespace fnets
