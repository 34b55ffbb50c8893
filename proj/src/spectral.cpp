#include "fnets/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "fnets/error.hpp"
#include "fnets/linalg.hpp"

namespace fnets {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

int default_bandwidth(Eigen::Index n) {
  if (n <= 2) throw DimensionError("default_bandwidth: n must be at least 3");
  const double nd = static_cast<double>(n);
  int m = static_cast<int>(std::floor(4.0 * std::cbrt(nd / std::log(nd))));
  m = std::max(m, 1);
  return std::min<int>(m, static_cast<int>(n - 1));
}

const char* to_string(ModelKind kind) {
  return kind == ModelKind::Restricted ? "restricted" : "unrestricted";
}

SpectralEstimate bartlett_spectral_density(const AcvSequence& acv, int m, bool want_vectors) {
  if (m < 1) throw DimensionError("bartlett_spectral_density: bandwidth must be positive");
  if (acv.max_lag() < m - 1)
    throw DimensionError("bartlett_spectral_density: bandwidth exceeds available lags");
  SpectralEstimate spec;
  spec.m = m;
  const int nf = 2 * m + 1;
  spec.frequencies.resize(nf);
  spec.matrices.resize(nf);
  spec.eigenvalues.resize(nf);
  if (want_vectors) spec.eigenvectors.resize(nf);
  for (int k = -m; k <= m; ++k) spec.frequencies[k + m] = kTwoPi * k / nf;

  for (int k = 0; k <= m; ++k) {
    const double w = spec.frequencies[k + m];
    MatrixXcd s = acv.matrices[0].cast<std::complex<double>>();
    // K(l/m) vanishes at |l| = m, so lags 1..m-1 suffice.
    for (int l = 1; l < m; ++l) {
      const double weight = 1.0 - static_cast<double>(l) / m;
      const std::complex<double> e = std::polar(weight, -l * w);
      const MatrixXd& g = acv.matrices[l];
      s += e * g.cast<std::complex<double>>() + std::conj(e) * g.transpose().cast<std::complex<double>>();
    }
    s /= kTwoPi;
    s = 0.5 * (s + s.adjoint()).eval();
    const linalg::HermitianEigen eig = linalg::hermitian_eigen(s, want_vectors);
    spec.matrices[k + m] = s;
    spec.eigenvalues[k + m] = eig.values;
    if (want_vectors) spec.eigenvectors[k + m] = eig.vectors;
    if (k > 0) {
      spec.matrices[m - k] = s.conjugate();
      spec.eigenvalues[m - k] = eig.values;
      if (want_vectors) spec.eigenvectors[m - k] = eig.vectors.conjugate();
    }
  }
  return spec;
}

SpectralEstimate dynamic_pca_common(const SpectralEstimate& spec, int q) {
  if (spec.matrices.empty()) throw DimensionError("dynamic_pca_common: empty estimate");
  const Eigen::Index p = spec.matrices.front().rows();
  if (q < 0 || q > p) throw DimensionError("dynamic_pca_common: q must lie in [0, p]");
  if (q > 0 && spec.eigenvectors.empty())
    throw DimensionError("dynamic_pca_common: eigenvectors were not computed");
  SpectralEstimate out;
  out.m = spec.m;
  out.frequencies = spec.frequencies;
  const int nf = spec.size();
  out.matrices.resize(nf);
  out.eigenvalues.resize(nf);
  out.eigenvectors.resize(nf);
  for (int k = 0; k < nf; ++k) {
    if (q == 0) {
      out.matrices[k] = MatrixXcd::Zero(p, p);
      out.eigenvalues[k] = VectorXd();
      out.eigenvectors[k] = MatrixXcd(p, 0);
      continue;
    }
    const MatrixXcd e = spec.eigenvectors[k].leftCols(q);
    const VectorXd mu = spec.eigenvalues[k].head(q);
    MatrixXcd s = e * mu.cast<std::complex<double>>().asDiagonal() * e.adjoint();
    out.matrices[k] = 0.5 * (s + s.adjoint());
    out.eigenvalues[k] = mu;
    out.eigenvectors[k] = e;
  }
  return out;
}

AcvSequence inverse_ft_acv(const SpectralEstimate& spec, ProcessLabel label) {
  if (spec.matrices.empty()) throw DimensionError("inverse_ft_acv: empty estimate");
  const int m = spec.m;
  const int nf = spec.size();
  const Eigen::Index p = spec.matrices.front().rows();
  AcvSequence acv;
  acv.label = label;
  acv.matrices.reserve(m + 1);
  const double scale = kTwoPi / nf;
  for (int l = 0; l <= m; ++l) {
    MatrixXcd g = MatrixXcd::Zero(p, p);
    for (int k = -m; k <= m; ++k)
      g += std::polar(1.0, l * spec.frequencies[k + m]) * spec.matrices[k + m];
    g *= scale;
    const double residue = g.imag().cwiseAbs().maxCoeff();
    const double size = std::max(1.0, g.real().cwiseAbs().maxCoeff());
    if (residue > 1e-6 * size)
      throw NumericalError("inverse_ft_acv: imaginary residue " + std::to_string(residue) +
                           " at lag " + std::to_string(l));
    acv.matrices.push_back(g.real());
  }
  return acv;
}

VectorXd averaged_eigenvalues(const SpectralEstimate& spec) {
  VectorXd avg = VectorXd::Zero(spec.eigenvalues.front().size());
  for (const auto& mu : spec.eigenvalues) avg += mu;
  return avg / spec.size();
}

FactorAdjustment factor_adjust_unrestricted(const TimeSeriesPanel& panel, int q, int m) {
  if (q < 0 || q > panel.p()) throw DimensionError("factor adjustment: q must lie in [0, p]");
  if (m < 1 || m > panel.n() - 1) throw DimensionError("factor adjustment: bandwidth out of range");
  FactorAdjustment fa;
  fa.q_or_r = q;
  fa.kind = ModelKind::Unrestricted;
  fa.bandwidth = m;
  fa.acv_x = sample_acv(panel, m);
  if (q == 0) {
    fa.acv_chi.label = ProcessLabel::Chi;
    for (const auto& g : fa.acv_x.matrices)
      fa.acv_chi.matrices.push_back(MatrixXd::Zero(g.rows(), g.cols()));
  } else {
    const SpectralEstimate spec = bartlett_spectral_density(fa.acv_x, m, true);
    fa.acv_chi = inverse_ft_acv(dynamic_pca_common(spec, q), ProcessLabel::Chi);
  }
  fa.acv_xi.label = ProcessLabel::Xi;
  for (int l = 0; l <= m; ++l) fa.acv_xi.matrices.push_back(fa.acv_x.matrices[l] - fa.acv_chi.matrices[l]);
  return fa;
}

FactorAdjustment factor_adjust_restricted(const TimeSeriesPanel& panel, int r, int max_lag) {
  if (r < 0 || r > panel.p()) throw DimensionError("factor adjustment: r must lie in [0, p]");
  if (max_lag < 1 || max_lag > panel.n() - 1)
    throw DimensionError("factor adjustment: max_lag out of range");
  FactorAdjustment fa;
  fa.q_or_r = r;
  fa.kind = ModelKind::Restricted;
  fa.bandwidth = max_lag;
  fa.acv_x = sample_acv(panel, max_lag);
  const linalg::SymmetricEigen eig = linalg::jacobi_eigen(fa.acv_x.matrices[0], true);
  fa.static_eigvecs = eig.vectors.leftCols(r);
  fa.static_eigvals = eig.values.head(r);
  const MatrixXd proj = fa.static_eigvecs * fa.static_eigvecs.transpose();
  fa.acv_chi.label = ProcessLabel::Chi;
  fa.acv_xi.label = ProcessLabel::Xi;
  for (int l = 0; l <= max_lag; ++l) {
    fa.acv_chi.matrices.push_back(proj * fa.acv_x.matrices[l] * proj);
    fa.acv_xi.matrices.push_back(fa.acv_x.matrices[l] - fa.acv_chi.matrices[l]);
  }
  return fa;
}

}  // namespace fnets

namespace fnets {

FactorAdjustment factor_adjust(const TimeSeriesPanel& panel, ModelKind kind, int q_or_r,
                               int bandwidth, int min_lags) {
  if (kind == ModelKind::Restricted) {
    const int lags = std::max({min_lags, 1, bandwidth});
    return factor_adjust_restricted(panel, q_or_r, lags);
  }
  const int m = bandwidth > 0 ? bandwidth : default_bandwidth(panel.n());
  if (m < min_lags)
    throw DimensionError("bandwidth " + std::to_string(m) + " is smaller than the " +
                         std::to_string(min_lags) + " lags required");
  return factor_adjust_unrestricted(panel, q_or_r, m);
}

}  // namespace fnets
