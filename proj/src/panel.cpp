#include "fnets/panel.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fnets/error.hpp"

namespace fnets {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\"");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\"");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

// strtod accepts "nan" and "inf"; both parse but are rejected later as data.
bool parse_number(const std::string& s, double& v) {
  if (s.empty()) return false;
  char* end = nullptr;
  errno = 0;
  v = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

}  // namespace

const char* to_string(ProcessLabel label) {
  switch (label) {
    case ProcessLabel::X:
      return "x";
    case ProcessLabel::Chi:
      return "chi";
    case ProcessLabel::Xi:
      return "xi";
  }
  return "x";
}

TimeSeriesPanel make_panel(MatrixXd values, bool center, std::vector<std::string> names) {
  if (values.rows() < 1) throw DimensionError("panel needs at least one variable");
  if (values.cols() < 2) throw DimensionError("panel needs at least two time points");
  if (!values.allFinite()) throw DataError("panel contains non-finite values");
  if (!names.empty() && static_cast<Eigen::Index>(names.size()) != values.rows())
    throw DimensionError("number of names does not match number of variables");
  TimeSeriesPanel panel;
  panel.mean_x = VectorXd::Zero(values.rows());
  if (center) {
    panel.mean_x = values.rowwise().mean();
    values.colwise() -= panel.mean_x;
  }
  panel.values = std::move(values);
  panel.centered = center;
  panel.names = std::move(names);
  return panel;
}

TimeSeriesPanel panel_segment(const TimeSeriesPanel& panel, Eigen::Index rows, Eigen::Index t0,
                              Eigen::Index len, bool center) {
  if (rows < 1 || rows > panel.p() || t0 < 0 || len < 2 || t0 + len > panel.n())
    throw DimensionError("panel segment out of range");
  TimeSeriesPanel seg = make_panel(panel.values.block(0, t0, rows, len), center);
  seg.mean_x += panel.mean_x.head(rows);
  if (!panel.names.empty())
    seg.names.assign(panel.names.begin(), panel.names.begin() + rows);
  return seg;
}

TimeSeriesPanel read_panel_csv(std::istream& in, bool transpose, bool center) {
  std::vector<std::vector<double>> rows;
  std::vector<std::string> header;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    std::vector<double> nums(fields.size());
    bool numeric = true;
    std::size_t bad = 0;
    for (std::size_t j = 0; j < fields.size(); ++j) {
      if (!parse_number(fields[j], nums[j])) {
        numeric = false;
        bad = j;
        break;
      }
    }
    if (!numeric) {
      if (rows.empty() && header.empty()) {
        header = fields;
        width = fields.size();
        continue;
      }
      throw FormatError("CSV parse error at line " + std::to_string(line_no) + ", column " +
                        std::to_string(bad + 1) + ": '" + fields[bad] + "'");
    }
    if (width == 0) width = nums.size();
    if (nums.size() != width)
      throw FormatError("CSV parse error at line " + std::to_string(line_no) + ": expected " +
                        std::to_string(width) + " fields, found " + std::to_string(nums.size()));
    for (std::size_t j = 0; j < nums.size(); ++j)
      if (!std::isfinite(nums[j]))
        throw DataError("non-finite value at line " + std::to_string(line_no) + ", column " +
                        std::to_string(j + 1));
    rows.push_back(std::move(nums));
  }
  if (rows.empty()) throw FormatError("CSV contains no numeric rows");

  MatrixXd m(rows.size(), width);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < width; ++j) m(i, j) = rows[i][j];
  // File rows are time points by default; the panel is stored p x n.
  MatrixXd values = transpose ? m : MatrixXd(m.transpose());
  if (transpose) header.clear();  // header labels columns, which are now time points
  return make_panel(std::move(values), center, std::move(header));
}

TimeSeriesPanel load_panel(const std::string& path, bool transpose, bool center) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open input file: " + path);
  return read_panel_csv(in, transpose, center);
}

MatrixXd AcvSequence::at(int lag) const {
  const int a = lag < 0 ? -lag : lag;
  if (a > max_lag()) throw DimensionError("lag " + std::to_string(lag) + " not available");
  return lag < 0 ? MatrixXd(matrices[a].transpose()) : matrices[a];
}

AcvSequence sample_acv(const MatrixXd& x, int max_lag) {
  const Eigen::Index n = x.cols();
  if (max_lag < 0 || max_lag >= n)
    throw DimensionError("sample_acv: max_lag must lie in [0, n-1]");
  AcvSequence acv;
  acv.label = ProcessLabel::X;
  acv.matrices.reserve(max_lag + 1);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (int l = 0; l <= max_lag; ++l) {
    // sum_{t=l+1}^{n} X_{t-l} X_t'
    MatrixXd g = x.leftCols(n - l) * x.rightCols(n - l).transpose();
    g *= inv_n;
    if (l == 0) g = 0.5 * (g + g.transpose()).eval();
    acv.matrices.push_back(std::move(g));
  }
  return acv;
}

}  // namespace fnets
