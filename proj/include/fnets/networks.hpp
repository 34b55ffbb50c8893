#pragma once

#include <string>
#include <vector>

#include "fnets/panel.hpp"
#include "fnets/var_estimation.hpp"

namespace fnets {

enum class NetworkKind { Granger, Pc, Lrpc };
const char* to_string(NetworkKind kind);
NetworkKind network_kind_from_string(const std::string& s);

struct Edge {
  int from = 0;  // 1-based
  int to = 0;
  double weight = 0.0;
  bool operator==(const Edge&) const = default;
};

struct NetworkGraph {
  NetworkKind kind = NetworkKind::Granger;
  bool directed = true;
  std::vector<std::string> nodes;
  std::vector<Edge> edges;  // sorted by (from, to)
  MatrixXd weight_matrix;
};

/// Edge i' -> i when some thresholded A_l(i, i') is nonzero; weight is the
/// largest modulus over lags.
NetworkGraph extract_granger(const VarFit& fit, double t, std::vector<std::string> names = {});

/// Off-diagonal entries with |value| > t become undirected edges (i < j).
NetworkGraph extract_undirected(const MatrixXd& m, double t, NetworkKind kind,
                                std::vector<std::string> names = {});

enum class ExportFormat { Dot, EdgelistCsv, MatrixCsv, Json };
ExportFormat export_format_from_string(const std::string& s);

std::string export_graph(const NetworkGraph& graph, ExportFormat format);

/// Reads back the JSON export.
NetworkGraph graph_from_json(const std::string& text);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace fnets
