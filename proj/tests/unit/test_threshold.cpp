#include <doctest.h>

#include <cmath>

#include "fnets/error.hpp"
#include "fnets/rng.hpp"
#include "fnets/threshold.hpp"
#include "fnets/var_estimation.hpp"

using namespace fnets;
using Eigen::MatrixXd;

namespace {

// Direct evaluation of Ratio, Diff and CUSUM from their definitions.
std::vector<double> brute_cusum(const MatrixXd& B, long long N, const std::vector<double>& t) {
  const int M = static_cast<int>(t.size());
  std::vector<double> ratio(M);
  for (int k = 0; k < M; ++k) {
    double cnt = 0;
    for (Eigen::Index i = 0; i < B.size(); ++i) cnt += std::abs(B.data()[i]) > t[k];
    ratio[k] = cnt / std::max(N - cnt, 1.0);
  }
  std::vector<double> diff(M + 1, 0.0);
  for (int k = 2; k <= M; ++k) diff[k] = (ratio[k - 1] - ratio[k - 2]) / (t[k - 1] - t[k - 2]);
  std::vector<double> out;
  for (int k = 2; k <= M - 1; ++k) {
    double a = 0, b = 0;
    for (int l = 2; l <= k; ++l) a += diff[l];
    for (int l = k + 1; l <= M; ++l) b += diff[l];
    out.push_back(std::sqrt(double(k) * (M - k) / M) * std::abs(a / k - b / (M - k)));
  }
  return out;
}

MatrixXd bimodal(Rng& rng) {
  MatrixXd B = MatrixXd::Zero(10, 10);
  for (int i = 0; i < 60; ++i) B.data()[i] = (rng.bernoulli(0.5) ? 1 : -1) * rng.uniform(0.2, 0.5);
  for (int i = 60; i < 100; ++i) B.data()[i] = (rng.bernoulli(0.5) ? 1 : -1) * rng.uniform(1e-4, 0.01);
  return B;
}

}  // namespace

TEST_CASE("candidate grid between the extremes") {
  MatrixXd B(2, 2);
  B << 0.01, 0, 1, -0.01;
  const auto t = candidate_grid(B, 4);
  REQUIRE(t.size() == 4);
  CHECK(t[0] == 0.0);
  CHECK(t[1] == 0.01);
  CHECK(t[2] == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(t[3] == 1.0);
  CHECK(candidate_grid(B, 100).back() == 1.0);
  CHECK_THROWS_AS(candidate_grid(MatrixXd::Zero(2, 2), 10), SelectionError);
  CHECK_THROWS_AS(candidate_grid(B, 3), DimensionError);
}

TEST_CASE("bimodal magnitudes match the reference statistic and keep the large cluster") {
  Rng rng(42);
  for (int rep = 0; rep < 20; ++rep) {
    const MatrixXd B = bimodal(rng);
    for (long long N : {100LL, 2500LL}) {
      const auto sel = select_threshold(B, N);
      const auto ref = brute_cusum(B, N, sel.candidates);
      REQUIRE(ref.size() == sel.cusum.size());
      for (std::size_t k = 0; k < ref.size(); ++k) CHECK(sel.cusum[k] == doctest::Approx(ref[k]).epsilon(1e-9));
      CHECK(sel.t_ada < 0.2);
      CHECK((B.array().abs() > sel.t_ada).count() >= 60);
    }
  }
}

TEST_CASE("constant diff selects the second candidate") {
  ThresholdSelection sel;
  sel.candidates = {0, 1, 2, 3, 4, 5};
  sel.ratio = {10, 8, 6, 4, 2, 0};
  cusum_select(sel);
  for (double d : sel.diff) CHECK(d == -2.0);
  // With the 1/k average the contrast shrinks as k grows, so k = 2 wins.
  CHECK(sel.k_star == 2);
  CHECK(sel.t_ada == 1.0);
  CHECK(sel.cusum[0] == doctest::Approx(std::sqrt(2.0 * 4 / 6) * 1.0));

  sel.ratio.assign(6, 0.5);
  cusum_select(sel);
  for (double c : sel.cusum) CHECK(c == 0.0);
  CHECK(sel.k_star == 2);
}

TEST_CASE("denominator must cover the support") {
  MatrixXd B = MatrixXd::Ones(3, 3);
  B(0, 0) = 2.0;
  CHECK_THROWS_AS(select_threshold(B, 8), DimensionError);
  const auto sel = select_threshold(B, 9, 10);
  CHECK(sel.N == 9);
  CHECK(sel.ratio.front() == 9.0);  // max(N - 9, 1) = 1
}

TEST_CASE("off diagonal part") {
  MatrixXd B(2, 2);
  B << 1, 2, 3, 4;
  MatrixXd want(2, 2);
  want << 0, 2, 3, 0;
  CHECK(off_diagonal(B) == want);
}
