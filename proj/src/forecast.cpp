#include "fnets/forecast.hpp"

#include "fnets/error.hpp"
#include "fnets/linalg.hpp"

namespace fnets {

CommonBasis common_basis(const AcvSequence& acv_chi, int r) {
  const Eigen::Index p = acv_chi.p();
  if (r < 0 || r > p) throw DimensionError("common forecast: r must lie in [0, p]");
  CommonBasis basis;
  basis.r_requested = r;
  if (r == 0) {
    basis.E = MatrixXd(p, 0);
    basis.mu = VectorXd();
    return basis;
  }
  const linalg::SymmetricEigen eig = linalg::jacobi_eigen(linalg::symmetrize(acv_chi.matrices[0]), true);
  const double top = eig.values(0);
  int keep = 0;
  while (keep < r && top > 0.0 && eig.values(keep) > 1e-10 * top) ++keep;
  basis.E = eig.vectors.leftCols(keep);
  basis.mu = eig.values.head(keep);
  return basis;
}

MatrixXd common_restricted(const AcvSequence& acv_chi, const CommonBasis& basis, const MatrixXd& x, int a) {
  if (a < 0) throw DimensionError("common forecast: horizon must be non-negative");
  if (basis.E.cols() == 0) return MatrixXd::Zero(acv_chi.p(), x.cols());
  const MatrixXd coef = basis.E * basis.mu.cwiseInverse().asDiagonal() * basis.E.transpose();
  return acv_chi.at(-a) * (coef * x);
}

MatrixXd idio_forecast(const VarFit& fit, const MatrixXd& xi_insample, int h) {
  if (h < 1) throw DimensionError("idiosyncratic forecast: horizon must be at least 1");
  const int d = fit.order;
  const Eigen::Index p = fit.p();
  const Eigen::Index n = xi_insample.cols();
  if (xi_insample.rows() != p) throw DimensionError("idiosyncratic forecast: dimension mismatch");
  if (n < d) throw DimensionError("idiosyncratic forecast: fewer observations than the VAR order");
  std::vector<MatrixXd> A;
  for (int l = 1; l <= d; ++l) A.push_back(fit.A(l));
  MatrixXd out(h, p);
  for (int a = 1; a <= h; ++a) {
    VectorXd f = VectorXd::Zero(p);
    for (int l = 1; l <= d; ++l) {
      // Step n + a - l: forecast if a - l >= 1, observed otherwise.
      const int step = a - l;
      if (step >= 1)
        f += A[l - 1] * out.row(step - 1).transpose();
      else
        f += A[l - 1] * xi_insample.col(n - 1 + step);
    }
    out.row(a - 1) = f.transpose();
  }
  return out;
}

ForecastResult combine(MatrixXd common_insample, MatrixXd common_forecast, MatrixXd idio_insample,
                       MatrixXd idio_forecast, const VectorXd& mean_x, int r_used) {
  if (common_forecast.rows() != idio_forecast.rows() || common_forecast.cols() != idio_forecast.cols() ||
      common_forecast.cols() != mean_x.size() || common_insample.rows() != idio_insample.rows() ||
      common_insample.cols() != idio_insample.cols())
    throw DimensionError("forecast components have mismatched shapes");
  ForecastResult res;
  res.horizon = static_cast<int>(common_forecast.rows());
  res.forecast = common_forecast + idio_forecast;
  res.forecast.rowwise() += mean_x.transpose();
  res.common_insample = std::move(common_insample);
  res.common_forecast = std::move(common_forecast);
  res.idio_insample = std::move(idio_insample);
  res.idio_forecast = std::move(idio_forecast);
  res.r_used = r_used;
  res.mean_x = mean_x;
  return res;
}

ForecastResult forecast_components(const VarFit& fit, const AcvSequence& acv_chi, int r,
                                   const MatrixXd& x, const VectorXd& mean_x, int h) {
  if (h < 1) throw DimensionError("forecast horizon must be at least 1");
  if (acv_chi.max_lag() < h) throw DimensionError("common forecast: not enough lags for the horizon");
  const CommonBasis basis = common_basis(acv_chi, r);
  const MatrixXd chi_in = common_restricted(acv_chi, basis, x, 0);
  const MatrixXd xi_in = x - chi_in;
  MatrixXd chi_fc(h, x.rows());
  for (int a = 1; a <= h; ++a)
    chi_fc.row(a - 1) = common_restricted(acv_chi, basis, x.rightCols(1), a).transpose();
  MatrixXd xi_fc = idio_forecast(fit, xi_in, h);
  ForecastResult res = combine(chi_in, std::move(chi_fc), xi_in, std::move(xi_fc), mean_x,
                               static_cast<int>(basis.E.cols()));
  if (basis.E.cols() < r)
    res.warnings.push_back("dropped " + std::to_string(r - basis.E.cols()) +
                           " near-zero eigenvalues of the common covariance");
  return res;
}

}  // namespace fnets
