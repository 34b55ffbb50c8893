#include "fnets/networks.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "fnets/error.hpp"

namespace fnets {

namespace {

std::vector<std::string> node_names(std::vector<std::string> names, Eigen::Index p) {
  if (names.empty()) {
    for (Eigen::Index i = 1; i <= p; ++i) names.push_back(std::to_string(i));
  } else if (static_cast<Eigen::Index>(names.size()) != p) {
    throw DimensionError("network: number of node names does not match p");
  }
  return names;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

const char* to_string(NetworkKind kind) {
  switch (kind) {
    case NetworkKind::Granger:
      return "granger";
    case NetworkKind::Pc:
      return "pc";
    case NetworkKind::Lrpc:
      return "lrpc";
  }
  return "granger";
}

NetworkKind network_kind_from_string(const std::string& s) {
  if (s == "granger") return NetworkKind::Granger;
  if (s == "pc") return NetworkKind::Pc;
  if (s == "lrpc") return NetworkKind::Lrpc;
  throw UsageError("unknown network type: " + s);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

NetworkGraph extract_granger(const VarFit& fit, double t, std::vector<std::string> names) {
  const Eigen::Index p = fit.p();
  NetworkGraph g;
  g.kind = NetworkKind::Granger;
  g.directed = true;
  g.nodes = node_names(std::move(names), p);
  g.weight_matrix = MatrixXd::Zero(p, p);
  const MatrixXd beta = threshold_matrix(fit.beta, t);
  for (int l = 0; l < fit.order; ++l) {
    // Block l of beta is A_{l+1}'; entry (i', i) of the block is A(i, i').
    const MatrixXd block = beta.block(l * p, 0, p, p);
    g.weight_matrix = g.weight_matrix.cwiseMax(block.cwiseAbs());
  }
  // weight_matrix(i', i) holds the weight of the edge i' -> i.
  for (Eigen::Index from = 0; from < p; ++from)
    for (Eigen::Index to = 0; to < p; ++to)
      if (g.weight_matrix(from, to) != 0.0)
        g.edges.push_back({static_cast<int>(from + 1), static_cast<int>(to + 1), g.weight_matrix(from, to)});
  return g;
}

NetworkGraph extract_undirected(const MatrixXd& m, double t, NetworkKind kind, std::vector<std::string> names) {
  if (kind == NetworkKind::Granger) throw UsageError("granger networks are directed");
  if (m.rows() != m.cols()) throw DimensionError("network: matrix must be square");
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-8) throw DataError("network: matrix is not symmetric");
  const Eigen::Index p = m.rows();
  NetworkGraph g;
  g.kind = kind;
  g.directed = false;
  g.nodes = node_names(std::move(names), p);
  g.weight_matrix = MatrixXd::Zero(p, p);
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = i + 1; j < p; ++j)
      if (std::abs(m(i, j)) > t) {
        g.weight_matrix(i, j) = g.weight_matrix(j, i) = m(i, j);
        g.edges.push_back({static_cast<int>(i + 1), static_cast<int>(j + 1), m(i, j)});
      }
  return g;
}

ExportFormat export_format_from_string(const std::string& s) {
  if (s == "dot") return ExportFormat::Dot;
  if (s == "edgelist" || s == "edgelist_csv" || s == "csv") return ExportFormat::EdgelistCsv;
  if (s == "matrix" || s == "matrix_csv") return ExportFormat::MatrixCsv;
  if (s == "json") return ExportFormat::Json;
  throw UsageError("unknown export format: " + s);
}

std::string export_graph(const NetworkGraph& graph, ExportFormat format) {
  std::ostringstream out;
  const auto label = [&](int i) { return graph.nodes[i - 1]; };
  switch (format) {
    case ExportFormat::Dot: {
      const char* arrow = graph.directed ? " -> " : " -- ";
      out << (graph.directed ? "digraph" : "graph") << " fnets {\n";
      for (const auto& n : graph.nodes) out << "  " << quoted(n) << ";\n";
      for (const auto& e : graph.edges)
        out << "  " << quoted(label(e.from)) << arrow << quoted(label(e.to)) << " [weight="
            << format_double(e.weight) << "];\n";
      out << "}\n";
      break;
    }
    case ExportFormat::EdgelistCsv:
      out << "from,to,weight\n";
      for (const auto& e : graph.edges)
        out << csv_field(label(e.from)) << ',' << csv_field(label(e.to)) << ',' << format_double(e.weight) << '\n';
      break;
    case ExportFormat::MatrixCsv: {
      for (std::size_t j = 0; j < graph.nodes.size(); ++j)
        out << (j ? "," : "") << csv_field(graph.nodes[j]);
      out << '\n';
      for (Eigen::Index i = 0; i < graph.weight_matrix.rows(); ++i) {
        for (Eigen::Index j = 0; j < graph.weight_matrix.cols(); ++j)
          out << (j ? "," : "") << format_double(graph.weight_matrix(i, j));
        out << '\n';
      }
      break;
    }
    case ExportFormat::Json: {
      nlohmann::json j;
      j["kind"] = to_string(graph.kind);
      j["directed"] = graph.directed;
      j["nodes"] = graph.nodes;
      j["edges"] = nlohmann::json::array();
      for (const auto& e : graph.edges) j["edges"].push_back({{"from", e.from}, {"to", e.to}, {"weight", e.weight}});
      nlohmann::json rows = nlohmann::json::array();
      for (Eigen::Index i = 0; i < graph.weight_matrix.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index k = 0; k < graph.weight_matrix.cols(); ++k) row.push_back(graph.weight_matrix(i, k));
        rows.push_back(row);
      }
      j["weight_matrix"] = rows;
      out << j.dump(2) << '\n';
      break;
    }
  }
  return out.str();
}

NetworkGraph graph_from_json(const std::string& text) {
  NetworkGraph g;
  try {
    const auto j = nlohmann::json::parse(text);
    g.kind = network_kind_from_string(j.at("kind").get<std::string>());
    g.directed = j.at("directed").get<bool>();
    g.nodes = j.at("nodes").get<std::vector<std::string>>();
    for (const auto& e : j.at("edges"))
      g.edges.push_back({e.at("from").get<int>(), e.at("to").get<int>(), e.at("weight").get<double>()});
    const auto& rows = j.at("weight_matrix");
    const auto p = static_cast<Eigen::Index>(rows.size());
    g.weight_matrix.resize(p, p);
    for (Eigen::Index i = 0; i < p; ++i)
      for (Eigen::Index k = 0; k < p; ++k) g.weight_matrix(i, k) = rows.at(i).at(k).get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("network JSON: ") + e.what());
  }
  return g;
}

}  // namespace fnets
