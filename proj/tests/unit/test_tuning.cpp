#include <doctest.h>

#include <cmath>

#include "fnets/error.hpp"
#include "fnets/tuning.hpp"
#include "support.hpp"

using namespace fnets;
using Eigen::MatrixXd;

TEST_CASE("fold boundaries") {
  auto f = make_folds(100, 1);
  REQUIRE(f.size() == 1);
  CHECK(f[0].train_begin == 0);
  CHECK(f[0].train_end == 50);
  CHECK(f[0].test_begin == 50);
  CHECK(f[0].test_end == 100);

  f = make_folds(101, 1);
  CHECK(f[0].train_end == 51);
  CHECK(f[0].test_end == 101);

  f = make_folds(100, 2);
  REQUIRE(f.size() == 2);
  CHECK(f[0].train_end == 25);
  CHECK(f[0].test_end == 50);
  CHECK(f[1].train_begin == 50);
  CHECK(f[1].train_end == 75);
  CHECK(f[1].test_end == 100);

  CHECK_THROWS_AS(make_folds(6, 3, 2), DimensionError);
}

TEST_CASE("geometric grids") {
  const auto g = geometric_grid(2.0, 3);
  REQUIRE(g.size() == 3);
  CHECK(g[0] == 2.0);
  CHECK(g[1] == doctest::Approx(0.2));
  CHECK(g[2] == doctest::Approx(0.02));
  const auto one = geometric_grid(2.0, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == 2.0);

  YuleWalkerSystem sys;
  sys.G = MatrixXd::Identity(2, 2);
  sys.g = MatrixXd(2, 2);
  sys.g << 0.5, -1, 0.2, 0.1;
  CHECK(default_lambda_grid(sys, VarMethod::Lasso, 3)[0] == 2.0);
  CHECK(default_lambda_grid(sys, VarMethod::Dantzig, 3)[0] == 1.0);
  CHECK(default_lambda_grid(sys, VarMethod::Lasso, 3)[2] == doctest::Approx(0.02));
  CHECK(default_eta_grid(sys.g, 4)[0] == 1.0);
}

TEST_CASE("log binomial") {
  CHECK(log_binomial(50, 0) == 0.0);
  CHECK(log_binomial(50, 5) == doctest::Approx(std::log(2118760.0)).epsilon(1e-12));
  CHECK(log_binomial(50, 5) == doctest::Approx(14.5664).epsilon(1e-5));
}

TEST_CASE("burg divergence") {
  MatrixXd G(2, 2);
  G << 2, 0.5, 0.5, 1;
  const MatrixXd inv = G.inverse();
  CHECK(std::abs(burg_divergence(inv, G)) < 1e-12);
  CHECK(burg_divergence(2 * inv, G) == doctest::Approx(2 * (1 - std::log(2.0))));
  MatrixXd flip = MatrixXd::Identity(2, 2);
  flip(0, 0) = -1.0;
  CHECK(std::isinf(burg_divergence(flip * inv, G)));
}

TEST_CASE("singleton grid is returned unchanged") {
  const auto d = fixture::simulate(5, 120, 6, fixture::Common::None);
  const auto panel = make_panel(d.data, true);
  FactorArgs fa;
  VarTuningOptions o;
  o.lambdas = {0.05};
  o.orders = {2};
  const auto cv = cv_var(panel, fa, o);
  CHECK(cv.lambda_hat == 0.05);
  CHECK(cv.d_hat == 2);
  CHECK(cv.score.size() == 1);
  CHECK(std::isfinite(cv.score(0, 0)));
  const auto eb = ebic_var(panel, fa, o);
  CHECK(eb.lambda_hat == 0.05);
  CHECK(eb.method == TuningMethod::Ebic);

  VarFit fit = estimate_var(build_yule_walker(sample_acv(panel, 1), 1), VarMethod::Lasso, 0.05);
  EtaTuningOptions eo;
  eo.etas = {0.2};
  const auto eta = cv_delta(panel, fa, fit, eo);
  CHECK(eta.eta_hat == 0.2);
  REQUIRE(eta.score.size() == 1);
  CHECK(std::isfinite(eta.score[0]));
}

TEST_CASE("ebic with alpha zero has no binomial term") {
  const auto d = fixture::simulate(6, 150, 5, fixture::Common::None);
  const auto panel = make_panel(d.data, true);
  FactorArgs fa;
  VarTuningOptions o;
  o.path_length = 5;
  o.alpha = 0.0;
  const auto a0 = ebic_var(panel, fa, o);
  o.alpha = 1.0;
  const auto a1 = ebic_var(panel, fa, o);
  for (Eigen::Index i = 0; i < a0.score.rows(); ++i) {
    const double s = a0.support(i, 0);
    CHECK(a1.score(i, 0) - a0.score(i, 0) == doctest::Approx(2 * log_binomial(25, s)));
  }
  CHECK(a0.grid_lambda.size() == 5);
  CHECK(a0.grid_lambda[0] > a0.grid_lambda[4]);
}

TEST_CASE("cross validation picks order one on oracle var data") {
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto d = fixture::simulate(seed, 200, 10, fixture::Common::None);
    FactorArgs fa;
    VarTuningOptions o;
    o.orders = {1, 2, 3, 4};
    const auto cv = cv_var(make_panel(d.data, true), fa, o);
    if (cv.d_hat == 1) ++hits;
  }
  CHECK(hits >= 3);
}

TEST_CASE("eta grid is descending") {
  const auto d = fixture::simulate(7, 200, 6, fixture::Common::None);
  const auto panel = make_panel(d.data, true);
  FactorArgs fa;
  VarFit fit = estimate_var(build_yule_walker(sample_acv(panel, 1), 1), VarMethod::Lasso, 0.05);
  EtaTuningOptions eo;
  eo.path_length = 4;
  const auto eta = cv_delta(panel, fa, fit, eo);
  REQUIRE(eta.grid_eta.size() == 4);
  for (std::size_t i = 1; i < 4; ++i) CHECK(eta.grid_eta[i] < eta.grid_eta[i - 1]);
  CHECK(eta.eta_hat > 0.0);
}
