#pragma once

#include <Eigen/Dense>

namespace fnets::linalg {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Eigenpairs sorted by descending eigenvalue; `vectors` holds one
/// eigenvector per column and is empty when vectors were not requested.
struct SymmetricEigen {
  VectorXd values;
  MatrixXd vectors;
};

struct HermitianEigen {
  VectorXd values;
  MatrixXcd vectors;
};

/// Cyclic Jacobi eigensolver for a real symmetric matrix. Only the upper
/// triangle of `a` is read. Each eigenvector is sign-normalised so that its
/// largest-modulus component is positive.
SymmetricEigen jacobi_eigen(const MatrixXd& a, bool want_vectors = true);

/// Hermitian eigendecomposition through the real symmetric embedding
/// [[Re, -Im], [Im, Re]]. Every eigenvalue of `h` appears twice in the
/// embedding; one complex eigenvector per pair is recovered, and clusters of
/// repeated eigenvalues are orthonormalised in complex arithmetic. The phase
/// of each eigenvector is fixed so its largest-modulus component is real and
/// positive.
HermitianEigen hermitian_eigen(const MatrixXcd& h, bool want_vectors = true);

/// Projection of a symmetric matrix onto the PSD cone by clipping negative
/// eigenvalues at zero.
struct PsdProjection {
  MatrixXd matrix;
  bool clipped = false;
  double max_eigenvalue = 0.0;
  double min_eigenvalue = 0.0;
};
PsdProjection project_psd(const MatrixXd& g);

/// Largest modulus among the eigenvalues of a general square matrix.
double spectral_radius(const MatrixXd& a);

inline MatrixXd symmetrize(const MatrixXd& a) { return 0.5 * (a + a.transpose()); }

}  // namespace fnets::linalg
