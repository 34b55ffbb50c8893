#pragma once

#include <istream>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fnets {

using Eigen::MatrixXd;
using Eigen::RowVectorXd;
using Eigen::VectorXd;

/// Observed panel stored p x n (rows are variables, columns time points).
struct TimeSeriesPanel {
  MatrixXd values;
  VectorXd mean_x;  // subtracted row means; zero when not centred
  bool centered = false;
  std::vector<std::string> names;  // optional variable names

  Eigen::Index p() const { return values.rows(); }
  Eigen::Index n() const { return values.cols(); }
};

/// Validates and wraps a p x n matrix; optionally subtracts row means.
TimeSeriesPanel make_panel(MatrixXd values, bool center, std::vector<std::string> names = {});

/// Columns [t0, t0 + len) of the first `rows` variables, re-centred if asked.
TimeSeriesPanel panel_segment(const TimeSeriesPanel& panel, Eigen::Index rows, Eigen::Index t0,
                              Eigen::Index len, bool center);

/// Parses CSV text. Rows are time points unless `transpose` is set. A first
/// row that does not parse as numbers is taken as a header of names.
TimeSeriesPanel read_panel_csv(std::istream& in, bool transpose, bool center);
TimeSeriesPanel load_panel(const std::string& path, bool transpose, bool center);

enum class ProcessLabel { X, Chi, Xi };
const char* to_string(ProcessLabel label);

/// Autocovariances for lags 0..max_lag; lag -l is the transpose of lag l.
struct AcvSequence {
  ProcessLabel label = ProcessLabel::X;
  std::vector<MatrixXd> matrices;

  int max_lag() const { return static_cast<int>(matrices.size()) - 1; }
  Eigen::Index p() const { return matrices.empty() ? 0 : matrices.front().rows(); }
  MatrixXd at(int lag) const;
};

/// Gamma(l) = n^{-1} sum_{t=l+1}^{n} X_{t-l} X_t', divisor n at every lag.
AcvSequence sample_acv(const MatrixXd& x, int max_lag);
inline AcvSequence sample_acv(const TimeSeriesPanel& panel, int max_lag) {
  return sample_acv(panel.values, max_lag);
}

}  // namespace fnets
