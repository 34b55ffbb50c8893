#include <doctest.h>

#include "fnets/error.hpp"
#include "fnets/networks.hpp"

using namespace fnets;
using Eigen::MatrixXd;

namespace {

VarFit lags(std::vector<MatrixXd> A) {
  VarFit fit;
  fit.order = static_cast<int>(A.size());
  const Eigen::Index p = A[0].rows();
  fit.beta.resize(p * fit.order, p);
  for (int l = 0; l < fit.order; ++l) fit.beta.middleRows(l * p, p) = A[l].transpose();
  return fit;
}

}  // namespace

TEST_CASE("granger edges") {
  CHECK(extract_granger(lags({MatrixXd::Zero(3, 3)}), 0.0).edges.empty());

  MatrixXd A = MatrixXd::Zero(2, 2);
  A(0, 1) = 0.3;
  auto g = extract_granger(lags({A}), 0.0);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0] == Edge{2, 1, 0.3});
  CHECK(g.directed);
  CHECK(g.nodes == std::vector<std::string>{"1", "2"});

  g = extract_granger(lags({MatrixXd::Zero(2, 2), A}), 0.0);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].from == 2);
  CHECK(g.edges[0].to == 1);

  MatrixXd B = A;
  B(0, 1) = -0.5;
  g = extract_granger(lags({A, B}), 0.0);
  CHECK(g.edges[0].weight == 0.5);
  CHECK(extract_granger(lags({A}), 0.3).edges.empty());
}

TEST_CASE("undirected edges") {
  CHECK(extract_undirected(MatrixXd::Identity(3, 3), 0.0, NetworkKind::Pc).edges.empty());
  MatrixXd M(2, 2);
  M << 1, -0.5, -0.5, 1;
  auto g = extract_undirected(M, 0.1, NetworkKind::Lrpc);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0] == Edge{1, 2, -0.5});
  CHECK_FALSE(g.directed);
  CHECK(extract_undirected(M, 0.5, NetworkKind::Pc).edges.empty());
  M(0, 1) = 0.2;
  CHECK_THROWS_AS(extract_undirected(M, 0.1, NetworkKind::Pc), DataError);
}

TEST_CASE("dot golden output") {
  const auto empty = extract_granger(lags({MatrixXd::Zero(2, 2)}), 0.0);
  CHECK(export_graph(empty, ExportFormat::Dot) == "digraph fnets {\n  \"1\";\n  \"2\";\n}\n");

  MatrixXd M(2, 2);
  M << 1, -0.5, -0.5, 1;
  const auto g = extract_undirected(M, 0.1, NetworkKind::Pc);
  CHECK(export_graph(g, ExportFormat::Dot) ==
        "graph fnets {\n  \"1\";\n  \"2\";\n  \"1\" -- \"2\" [weight=-0.5];\n}\n");

  MatrixXd A = MatrixXd::Zero(3, 3);
  A(0, 2) = 0.275;
  A(2, 1) = 0.1;
  const auto d = extract_granger(lags({A}), 0.0, {"gdp", "cpi", "rate \"r\""});
  CHECK(export_graph(d, ExportFormat::Dot) ==
        "digraph fnets {\n  \"gdp\";\n  \"cpi\";\n  \"rate \\\"r\\\"\";\n"
        "  \"cpi\" -> \"rate \\\"r\\\"\" [weight=0.1];\n"
        "  \"rate \\\"r\\\"\" -> \"gdp\" [weight=0.275];\n}\n");
}

TEST_CASE("csv exports") {
  MatrixXd A = MatrixXd::Zero(2, 2);
  A(0, 1) = 0.3;
  const auto g = extract_granger(lags({A}), 0.0);
  CHECK(export_graph(g, ExportFormat::EdgelistCsv) == "from,to,weight\n2,1,0.3\n");
  CHECK(export_graph(g, ExportFormat::MatrixCsv) == "1,2\n0,0\n0.3,0\n");
}

TEST_CASE("json round trip") {
  MatrixXd A = MatrixXd::Zero(3, 3);
  A(1, 0) = 0.1 + 0.2;
  A(2, 2) = -1.0 / 3.0;
  const auto g = extract_granger(lags({A}), 0.0);
  const auto back = graph_from_json(export_graph(g, ExportFormat::Json));
  CHECK(back.edges == g.edges);
  CHECK(back.kind == NetworkKind::Granger);
  CHECK(back.weight_matrix == g.weight_matrix);
  CHECK_THROWS(graph_from_json("{"));
}

TEST_CASE("shortest round-trip decimal") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(0.1 + 0.2) == "0.30000000000000004");
  CHECK(format_double(-2.0) == "-2");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("format and kind names") {
  CHECK(export_format_from_string("dot") == ExportFormat::Dot);
  CHECK(export_format_from_string("edgelist") == ExportFormat::EdgelistCsv);
  CHECK_THROWS_AS(export_format_from_string("png"), UsageError);
  CHECK(network_kind_from_string("lrpc") == NetworkKind::Lrpc);
}
