#pragma once

#include <string>
#include <vector>

#include "fnets/panel.hpp"
#include "fnets/var_estimation.hpp"

namespace fnets {

struct ForecastResult {
  int horizon = 1;
  MatrixXd forecast;          // h x p, combined
  MatrixXd common_insample;   // p x n
  MatrixXd common_forecast;   // h x p
  MatrixXd idio_insample;     // p x n
  MatrixXd idio_forecast;     // h x p
  int r_used = 0;
  VectorXd mean_x;
  std::vector<std::string> warnings;
};

/// Leading eigenpairs of Gamma_chi(0); eigenvalues below 1e-10 times the
/// largest are dropped.
struct CommonBasis {
  MatrixXd E;
  VectorXd mu;
  int r_requested = 0;
};
CommonBasis common_basis(const AcvSequence& acv_chi, int r);

/// Gamma_chi(-a) E M^{-1} E' x for each column x.
MatrixXd common_restricted(const AcvSequence& acv_chi, const CommonBasis& basis, const MatrixXd& x, int a);

/// Iterated VAR predictor for steps 1..h; rows are steps.
MatrixXd idio_forecast(const VarFit& fit, const MatrixXd& xi_insample, int h);

ForecastResult combine(MatrixXd common_insample, MatrixXd common_forecast, MatrixXd idio_insample,
                       MatrixXd idio_forecast, const VectorXd& mean_x, int r_used);

/// Restricted common forecast plus VAR forecast of the remainder. `x` is the
/// centred panel the forecast conditions on; `acv_chi` comes from the
/// restricted factor adjustment with `r` factors and at least h lags.
ForecastResult forecast_components(const VarFit& fit, const AcvSequence& acv_chi, int r,
                                   const MatrixXd& x, const VectorXd& mean_x, int h);

}  // namespace fnets
