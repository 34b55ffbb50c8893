// One PASS/FAIL line per acceptance criterion; exit status 1 when any fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "fnets/cli.hpp"
#include "fnets/model_document.hpp"
#include "fnets/pipeline.hpp"
#include "fnets/threshold.hpp"
#include "oracles/oracles.hpp"
#include "properties/properties.hpp"
#include "support.hpp"

using namespace fnets;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail, double seconds) {
  if (!pass) ++failures;
  std::printf("%s %d %s: %s (%.1f s)\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str(), seconds);
  std::fflush(stdout);
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

void criterion(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(id, title, o.pass, o.detail, secs);
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string count(int hits, int total) { return std::to_string(hits) + "/" + std::to_string(total); }

TimeSeriesPanel panel_of(const MatrixXd& x) { return make_panel(x, true); }

double max_abs(const MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Lasso fit with the order and lambda chosen by cross-validation.
FnetsModel cv_fit(const TimeSeriesPanel& panel, int q, std::vector<int> orders, VarMethod method) {
  FitOptions o;
  o.q = q;
  o.orders = std::move(orders);
  o.method = method;
  o.lrpc = false;
  return fit_fnets(panel, o);
}

Outcome factor_number(bool use_er) {
  int hits = 0;
  for (int rep = 1; rep <= 20; ++rep) {
    const auto panel = panel_of(fixture::simulate(rep, 500, 50).data);
    const auto sel = use_er ? select_q_er(panel, ModelKind::Unrestricted) : select_q_ic(panel, ModelKind::Unrestricted);
    if (sel.q_hat == 2) ++hits;
  }
  return {hits >= 16, "q_hat = 2 in " + count(hits, 20)};
}

Outcome order_selection() {
  auto run = [](Eigen::Index p, int d, VarMethod method) {
    int hits = 0;
    for (int rep = 1; rep <= 20; ++rep) {
      const auto panel = panel_of(fixture::simulate(100 + rep, 200, p, fixture::Common::None, d).data);
      if (cv_fit(panel, 0, {1, 2, 3, 4}, method).var.order == d) ++hits;
    }
    return hits;
  };
  const int lasso = run(10, 1, VarMethod::Lasso);
  const int ds = run(10, 1, VarMethod::Dantzig);
  const int lasso3 = run(20, 3, VarMethod::Lasso);
  return {lasso >= 14 && ds >= 15 && lasso3 >= 15,
          "lasso d=1 " + count(lasso, 20) + ", dantzig d=1 " + count(ds, 20) + ", lasso d=3 " + count(lasso3, 20)};
}

struct Recovery {
  double tpr = 0.0, l_f = 0.0;
};

const Recovery& support_recovery() {
  static const Recovery r = [] {
    Recovery acc;
    for (int rep = 1; rep <= 10; ++rep) {
      const auto d = fixture::simulate(200 + rep, 200, 50);
      const auto model = cv_fit(panel_of(d.data), -1, {1}, VarMethod::Lasso);
      const MatrixXd A1 = model.var.A(1);
      acc.tpr += tpr_at_fpr(A1, d.var.A[0], 0.05) / 10.0;
      acc.l_f += metrics(A1, d.var.A[0]).l_f / 10.0;
    }
    return acc;
  }();
  return r;
}

Outcome solver_oracles() {
  Rng rng(606);
  // (a) lasso on a diagonal system against the closed form.
  double err_a = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const int k = 1 + rep % 5, c = 1 + rep % 3;
    YuleWalkerSystem sys;
    sys.G = MatrixXd::Zero(k, k);
    sys.g = MatrixXd(k, c);
    for (int i = 0; i < k; ++i) sys.G(i, i) = rng.uniform(0.2, 3.0);
    for (Eigen::Index i = 0; i < sys.g.size(); ++i) sys.g.data()[i] = rng.uniform(-1.0, 1.0);
    const double lambda = rng.uniform(0.01, 1.0);
    FistaOptions o;
    o.max_iter = 20000;
    o.tol = 0.0;
    const MatrixXd beta = lasso_fista(sys, lambda, o).beta;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < c; ++j) {
        const double z = sys.g(i, j);
        const double ref = std::copysign(std::max(2.0 * std::abs(z) - lambda, 0.0), z) / (2.0 * sys.G(i, i));
        err_a = std::max(err_a, std::abs(beta(i, j) - ref));
      }
  }
  // (b) Dantzig columns against vertex enumeration.
  double err_b = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const int p = 1 + rep % 2, d = 1 + (rep / 2) % 2;
    MatrixXd x(p, 60);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.normal();
    const auto sys = build_yule_walker(sample_acv(x, d), d);
    const double lambda = rng.uniform(0.05, 0.9) * sys.g.cwiseAbs().maxCoeff();
    const MatrixXd beta = dantzig_lp(sys, lambda).beta;
    for (int j = 0; j < p; ++j) {
      const auto ref = oracle::l1_box(sys.G, sys.g.col(j), VectorXd::Constant(p * d, lambda));
      err_b = std::max(err_b, std::abs(beta.col(j).cwiseAbs().sum() - ref.objective));
      const double slack = (sys.G * beta.col(j) - sys.g.col(j)).cwiseAbs().maxCoeff() - lambda;
      err_b = std::max(err_b, slack);
    }
  }
  // (c) CLIME on the identity.
  double err_c = 0.0;
  for (int p : {1, 3, 10}) {
    const MatrixXd I = MatrixXd::Identity(p, p);
    err_c = std::max(err_c, max_abs(clime(I, 0.1).Delta - 0.9 * I));
  }
  // (d) ACLIME against the two-stage enumeration oracle.
  double err_d = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const int p = 2 + rep % 2;
    const Eigen::Index n = 50 + 10 * (rep % 5);
    MatrixXd x(p, n);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.normal();
    const MatrixXd G = sample_acv(x, 0).at(0);
    const double eta2 = rng.uniform(0.2, 2.0);
    err_d = std::max(err_d, max_abs(aclime(G, eta2, n).Delta - oracle::aclime(G, eta2, n)));
  }
  const bool pass = err_a <= 1e-5 && err_b <= 1e-6 && err_c <= 1e-8 && err_d <= 1e-6;
  std::ostringstream os;
  os << "max errors fista " << err_a << ", dantzig " << err_b << ", clime " << err_c << ", aclime " << err_d;
  return {pass, os.str()};
}

Outcome spectral() {
  Rng rng(707);
  MatrixXd x(2, 2000);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.normal();
  const int m = default_bandwidth(2000);
  const auto s = bartlett_spectral_density(sample_acv(x, m), m);
  const MatrixXcd target = MatrixXcd::Identity(2, 2) / (2.0 * M_PI);
  double dev = 0.0;
  for (int k = -m; k <= m; ++k) dev += (s.at(k) - target).cwiseAbs().maxCoeff() / s.size();

  int broken = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const Eigen::Index p = 1 + rep % 6, n = 30 + 7 * (rep % 10);
    MatrixXd y(p, n);
    for (Eigen::Index i = 0; i < y.size(); ++i) y.data()[i] = rng.normal() + (i % p == 0 ? 0.5 * rng.normal() : 0.0);
    const int mm = default_bandwidth(n);
    const auto est = bartlett_spectral_density(sample_acv(make_panel(y, true), mm), mm);
    bool ok = true;
    for (int k = -mm; k <= mm; ++k) {
      const MatrixXcd& S = est.at(k);
      const double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
      ok = ok && (S - S.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
      ok = ok && (S - est.at(-k).conjugate()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
      ok = ok && oracle::hermitian_eigenvalues(S).minCoeff() >= -1e-10 * scale;
    }
    if (!ok) ++broken;
  }
  return {dev <= 0.15 && broken == 0, fmt("mean deviation %.4f", dev) + ", invariant failures " + count(broken, 100)};
}

Outcome threshold_gap() {
  Rng rng(42);
  int inside = 0, padded = 0;
  for (int rep = 0; rep < 20; ++rep) {
    MatrixXd B = MatrixXd::Zero(10, 10);
    for (int i = 0; i < 60; ++i) B.data()[i] = (rng.bernoulli(0.5) ? 1 : -1) * rng.uniform(0.2, 0.5);
    for (int i = 60; i < 100; ++i) B.data()[i] = (rng.bernoulli(0.5) ? 1 : -1) * rng.uniform(1e-4, 0.01);
    const double t = select_threshold(B, B.size()).t_ada;
    if (t > 0.01 && t < 0.2) ++inside;
    // Same matrix read as the nonzero part of a 50 x 50 coefficient matrix.
    const double tp = select_threshold(B, 2500).t_ada;
    if (tp > 0.01 && tp < 0.2) ++padded;
  }
  return {inside >= 18, "t_ada in (0.01, 0.2) in " + count(inside, 20) + " (with N = 2500: " + count(padded, 20) + ")"};
}

Outcome forecast_identities() {
  // Full-rank restricted projection at a = 0.
  const auto panel = panel_of(fixture::simulate(901, 120, 8).data);
  const auto fa = factor_adjust_restricted(panel, 8, 1);
  const double err_common =
      max_abs(common_restricted(fa.acv_chi, common_basis(fa.acv_chi, 8), panel.values, 0) - panel.values);

  // Two-step VAR(1) predictor.
  Rng rng(902);
  VarFit fit;
  MatrixXd A(5, 5);
  for (Eigen::Index i = 0; i < A.size(); ++i) A.data()[i] = rng.uniform(-0.3, 0.3);
  fit.beta = A.transpose();
  MatrixXd xi(5, 10);
  for (Eigen::Index i = 0; i < xi.size(); ++i) xi.data()[i] = rng.normal();
  const double err_var = (idio_forecast(fit, xi, 2).row(1).transpose() - A * A * xi.col(9)).cwiseAbs().maxCoeff();

  // Serialised model and the command-line tool both reproduce the forecast.
  const FnetsModel direct = fit_fnets(panel, FitOptions{});
  const MatrixXd expected = forecast_fnets(direct, panel, 3).forecast;
  const FnetsModel loaded = parse_model(serialize_model(direct, Provenance{}));
  bool exact = forecast_fnets(loaded, panel, 3).forecast == expected;

  const fs::path dir = fs::temp_directory_path() / ("fnets_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string csv = (dir / "panel.csv").string(), model = (dir / "model.json").string(),
                    out = (dir / "forecast.csv").string();
  {
    std::ofstream f(csv);
    f.precision(17);
    const MatrixXd raw = panel.values.colwise() + panel.mean_x;
    for (Eigen::Index t = 0; t < raw.cols(); ++t)
      for (Eigen::Index i = 0; i < raw.rows(); ++i) f << raw(i, t) << (i + 1 < raw.rows() ? ',' : '\n');
  }
  auto call = [](std::vector<std::string> args) {
    args.insert(args.begin(), "fnets");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream o, e;
    return run_cli(static_cast<int>(argv.size()), argv.data(), o, e);
  };
  const int fit_code = call({"fit", csv, "--out", model});
  const int fc_code = call({"forecast", "--model", model, "--data", csv, "--ahead", "3", "--out", out});
  bool cli_exact = false;
  if (fit_code == 0 && fc_code == 0) {
    const auto reread = load_panel(csv, false, true);
    const MatrixXd want = forecast_fnets(fit_fnets(reread, FitOptions{}), reread, 3).forecast;
    cli_exact = load_panel(out, false, false).values == want.transpose();
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  exact = exact && cli_exact;

  std::ostringstream os;
  os << "common error " << err_common << ", two-step error " << err_var << ", round trip "
     << (exact ? "bit-exact" : "differs");
  return {err_common <= 1e-10 && err_var <= 1e-12 && exact, os.str()};
}

Outcome aclime_vs_clime() {
  double tpr_c = 0.0, tpr_a = 0.0;
  for (int rep = 1; rep <= 10; ++rep) {
    const auto d = fixture::simulate(1000 + rep, 200, 50, fixture::Common::Unrestricted, 1, 2, InnovationKind::Banded);
    const auto panel = panel_of(d.data);
    FitOptions o;
    o.lrpc = true;
    o.lrpc_adaptive = false;
    const FnetsModel plain = fit_fnets(panel, o);
    o.q = plain.q;
    o.lrpc_adaptive = true;
    const FnetsModel adaptive = fit_fnets(panel, o);
    tpr_c += tpr_at_fpr(plain.precision.Delta, d.var.Delta, 0.05, IndexSet::OffDiagonal) / 10.0;
    tpr_a += tpr_at_fpr(adaptive.precision.Delta, d.var.Delta, 0.05, IndexSet::OffDiagonal) / 10.0;
  }
  return {tpr_a >= tpr_c - 0.02, fmt("mean TPR aclime %.4f, clime %.4f", tpr_a, tpr_c)};
}

Outcome invariants() {
  int cases = 0, failed = 0, properties = 0;
  std::string first;
  for (const auto& r : props::run_all()) {
    ++properties;
    cases = cases == 0 ? r.cases : std::min(cases, r.cases);
    if (r.failures > 0) {
      ++failed;
      if (first.empty()) first = "; first: " + r.module + "/" + r.name + " " + r.first_failure;
    }
  }
  return {failed == 0 && cases >= 100,
          std::to_string(properties) + " properties, min cases " + std::to_string(cases) + ", failing " +
              std::to_string(failed) + first};
}

}  // namespace

int main() {
  criterion(1, "factor number by information criterion", [] {
    const auto start = std::chrono::steady_clock::now();
    Outcome o = factor_number(false);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.pass = o.pass && secs <= 300.0;
    return o;
  });
  criterion(2, "factor number by eigenvalue ratio", [] { return factor_number(true); });
  criterion(3, "var order by cross-validation", order_selection);
  criterion(4, "support recovery", [] {
    const double tpr = support_recovery().tpr;
    return Outcome{tpr >= 0.90, fmt("mean TPR at FPR 0.05 %.4f", tpr)};
  });
  criterion(5, "estimation error", [] {
    const double lf = support_recovery().l_f;
    return Outcome{lf >= 0.45 && lf <= 0.80, fmt("mean L_F %.4f", lf)};
  });
  criterion(6, "solver oracles", solver_oracles);
  criterion(7, "spectral estimator", spectral);
  criterion(8, "threshold in the magnitude gap", threshold_gap);
  criterion(9, "forecast identities", forecast_identities);
  criterion(10, "adaptive precision estimator", aclime_vs_clime);
  criterion(11, "invariant suite", invariants);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
