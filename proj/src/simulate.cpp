#include "fnets/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "fnets/error.hpp"
#include "fnets/linalg.hpp"
#include "fnets/var_estimation.hpp"

namespace fnets {

namespace {

void check_spec(const SimSpec& spec) {
  if (spec.n < 2 || spec.p < 1) throw DimensionError("simulation needs n >= 2 and p >= 1");
  if (spec.var_order < 1) throw DimensionError("simulation needs a positive VAR order");
  if (spec.burn_in < 0) throw DimensionError("burn-in must be non-negative");
}

}  // namespace

MatrixXd banded_delta(Eigen::Index p) {
  MatrixXd d = MatrixXd::Zero(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    d(i, i) = 1.0;
    if (i + 1 < p) d(i, i + 1) = d(i + 1, i) = 0.6;
    if (i + 2 < p) d(i, i + 2) = d(i + 2, i) = 0.3;
  }
  return d;
}

double innovation_draw(Rng& rng, bool heavy) {
  return heavy ? std::sqrt(3.0 / 5.0) * rng.student_t(5) : rng.normal();
}

VarSimulation sim_var(const SimSpec& spec, Rng& rng) {
  check_spec(spec);
  const Eigen::Index p = spec.p;
  const int d = spec.var_order;
  const double prob = spec.link_prob > 0.0 ? spec.link_prob : 1.0 / static_cast<double>(p);

  VarSimulation sim;
  MatrixXd ad;
  for (int attempt = 1;; ++attempt) {
    ad = MatrixXd::Zero(p, p);
    for (Eigen::Index i = 0; i < p; ++i)
      for (Eigen::Index j = 0; j < p; ++j)
        if (rng.bernoulli(prob)) ad(i, j) = spec.coeff_value;
    MatrixXd beta = MatrixXd::Zero(p * d, p);
    beta.bottomRows(p) = ad.transpose();
    if (linalg::spectral_radius(companion_matrix(beta)) < 0.99) {
      sim.graph_draws = attempt;
      break;
    }
    if (attempt >= 100) throw NumericalError("sim_var: no stable VAR after 100 graph draws");
  }
  sim.A.assign(d, MatrixXd::Zero(p, p));
  sim.A[d - 1] = ad;

  if (spec.innovation == InnovationKind::Banded) {
    sim.Delta = banded_delta(p);
    Eigen::LLT<MatrixXd> llt(sim.Delta);
    if (llt.info() != Eigen::Success) throw NumericalError("banded precision matrix is not positive definite");
    sim.Gamma = llt.solve(MatrixXd::Identity(p, p));
    sim.Gamma = linalg::symmetrize(sim.Gamma);
  } else {
    sim.Delta = MatrixXd::Identity(p, p);
    sim.Gamma = MatrixXd::Identity(p, p);
  }
  const MatrixXd chol = sim.Gamma.llt().matrixL();

  const Eigen::Index total = spec.burn_in + spec.n;
  MatrixXd xi = MatrixXd::Zero(p, total);
  MatrixXd eps(p, total);
  VectorXd z(p);
  for (Eigen::Index t = 0; t < total; ++t) {
    for (Eigen::Index i = 0; i < p; ++i) z(i) = innovation_draw(rng, spec.heavy_tails);
    eps.col(t) = spec.innovation == InnovationKind::Identity ? z : VectorXd(chol * z);
    VectorXd x = eps.col(t);
    if (t >= d) x += ad * xi.col(t - d);
    xi.col(t) = x;
  }
  sim.data = xi.rightCols(spec.n);
  sim.innovations = eps.rightCols(spec.n);
  return sim;
}

VarSimulation sim_var(const SimSpec& spec) {
  Rng rng(spec.seed);
  return sim_var(spec, rng);
}

FactorSimulation sim_unrestricted(const SimSpec& spec, Rng& rng) {
  check_spec(spec);
  if (spec.q < 1) throw DimensionError("sim_unrestricted needs q >= 1");
  const Eigen::Index p = spec.p;
  const int q = spec.q;
  const Eigen::Index total = spec.burn_in + spec.n;
  FactorSimulation sim;
  sim.shocks.resize(q, total);
  for (Eigen::Index t = 0; t < total; ++t)
    for (int j = 0; j < q; ++j) sim.shocks(j, t) = innovation_draw(rng, spec.heavy_tails);
  sim.loadings.resize(p, q);
  sim.ar_coefs.resize(p, q);
  for (Eigen::Index i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) {
      sim.loadings(i, j) = rng.uniform(-1.0, 1.0);
      sim.ar_coefs(i, j) = rng.uniform(-0.8, 0.8);
    }
  MatrixXd chi = MatrixXd::Zero(p, total);
  for (Eigen::Index i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) {
      double y = 0.0;
      for (Eigen::Index t = 0; t < total; ++t) {
        y = sim.ar_coefs(i, j) * y + sim.shocks(j, t);
        chi(i, t) += sim.loadings(i, j) * y;
      }
    }
  sim.data = chi.rightCols(spec.n);
  return sim;
}

FactorSimulation sim_restricted(const SimSpec& spec, Rng& rng) {
  check_spec(spec);
  if (spec.q < 1) throw DimensionError("sim_restricted needs q >= 1");
  const Eigen::Index p = spec.p;
  const int q = spec.q;
  const Eigen::Index total = spec.burn_in + spec.n + 1;
  FactorSimulation sim;
  sim.shocks.resize(q, total);
  for (Eigen::Index t = 0; t < total; ++t)
    for (int j = 0; j < q; ++j) sim.shocks(j, t) = innovation_draw(rng, spec.heavy_tails);
  sim.loadings.resize(p, 2 * q);
  for (Eigen::Index i = 0; i < p; ++i)
    for (int j = 0; j < 2 * q; ++j) sim.loadings(i, j) = rng.normal();
  MatrixXd chi(p, spec.n);
  for (Eigen::Index t = 0; t < spec.n; ++t) {
    const Eigen::Index s = total - spec.n + t;
    VectorXd f(2 * q);
    f.head(q) = sim.shocks.col(s);
    f.tail(q) = sim.shocks.col(s - 1);
    chi.col(t) = sim.loadings * f;
  }
  sim.data = chi;
  return sim;
}

namespace {

struct Labelled {
  double score;
  bool positive;
};

std::vector<Labelled> collect(const MatrixXd& estimate, const MatrixXd& truth, IndexSet set) {
  if (estimate.rows() != truth.rows() || estimate.cols() != truth.cols())
    throw DimensionError("metrics: shape mismatch");
  std::vector<Labelled> cells;
  for (Eigen::Index i = 0; i < truth.rows(); ++i)
    for (Eigen::Index j = 0; j < truth.cols(); ++j) {
      if (set == IndexSet::OffDiagonal && i == j) continue;
      cells.push_back({std::abs(estimate(i, j)), truth(i, j) != 0.0});
    }
  return cells;
}

}  // namespace

EvalMetrics metrics(const MatrixXd& estimate, const MatrixXd& truth, IndexSet set) {
  const auto cells = collect(estimate, truth, set);
  double pos = 0, neg = 0, tp = 0, fp = 0;
  for (const auto& c : cells) {
    if (c.positive) {
      ++pos;
      if (c.score != 0.0) ++tp;
    } else {
      ++neg;
      if (c.score != 0.0) ++fp;
    }
  }
  if (pos == 0 || neg == 0) throw DimensionError("metrics: need both positive and negative cells");
  EvalMetrics m;
  m.tpr = tp / pos;
  m.fpr = fp / neg;
  const double tf = truth.norm();
  m.l_f = (estimate - truth).norm() / tf;
  Eigen::JacobiSVD<MatrixXd> s_diff(estimate - truth), s_truth(truth);
  m.l_2 = s_diff.singularValues()(0) / s_truth.singularValues()(0);
  return m;
}

double tpr_at_fpr(const MatrixXd& estimate, const MatrixXd& truth, double fpr, IndexSet set) {
  auto cells = collect(estimate, truth, set);
  double pos = 0, neg = 0;
  for (const auto& c : cells) (c.positive ? pos : neg) += 1;
  if (pos == 0 || neg == 0) throw DimensionError("roc: need both positive and negative cells");
  std::sort(cells.begin(), cells.end(), [](const Labelled& a, const Labelled& b) { return a.score > b.score; });
  // ROC vertices from lowering the threshold through each distinct nonzero score.
  std::vector<std::pair<double, double>> curve{{0.0, 0.0}};
  double tp = 0, fp = 0;
  for (std::size_t i = 0; i < cells.size() && cells[i].score > 0.0;) {
    const double s = cells[i].score;
    while (i < cells.size() && cells[i].score == s) {
      (cells[i].positive ? tp : fp) += 1;
      ++i;
    }
    curve.emplace_back(fp / neg, tp / pos);
  }
  curve.emplace_back(1.0, 1.0);
  // The highest vertex at or left of fpr, then linear towards the next one.
  std::size_t k = 0;
  while (k + 1 < curve.size() && curve[k + 1].first <= fpr) ++k;
  if (k + 1 == curve.size()) return curve[k].second;
  const auto [x0, y0] = curve[k];
  const auto [x1, y1] = curve[k + 1];
  return y0 + (y1 - y0) * (fpr - x0) / (x1 - x0);
}

}  // namespace fnets
