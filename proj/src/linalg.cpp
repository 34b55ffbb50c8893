#include "fnets/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "fnets/error.hpp"

namespace fnets::linalg {

namespace {

constexpr int kMaxSweeps = 60;

// In-place rotation of the pair (x, y) used by the Jacobi update.
inline void rotate(double& x, double& y, double s, double tau) {
  const double g = x;
  const double h = y;
  x = g - s * (h + g * tau);
  y = h + s * (g - h * tau);
}

std::vector<int> descending_order(const VectorXd& values) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return values(i) > values(j); });
  return order;
}

}  // namespace

SymmetricEigen jacobi_eigen(const MatrixXd& a_in, bool want_vectors) {
  const Eigen::Index n = a_in.rows();
  if (a_in.cols() != n) throw DimensionError("jacobi_eigen: matrix is not square");
  if (!a_in.allFinite()) throw NumericalError("jacobi_eigen: non-finite input");

  // Row-major working copy; only the strict upper triangle is rotated.
  std::vector<double> a(static_cast<size_t>(n * n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a[i * n + j] = a_in(std::min(i, j), std::max(i, j));
  std::vector<double> v;
  if (want_vectors) {
    v.assign(static_cast<size_t>(n * n), 0.0);
    for (Eigen::Index i = 0; i < n; ++i) v[i * n + i] = 1.0;
  }
  std::vector<double> d(n), b(n), z(n, 0.0);
  for (Eigen::Index i = 0; i < n; ++i) d[i] = b[i] = a[i * n + i];

  bool converged = n <= 1;
  for (int sweep = 1; sweep <= kMaxSweeps && !converged; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p + 1 < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += std::abs(a[p * n + q]);
    if (off == 0.0) {
      converged = true;
      break;
    }
    const double tresh = sweep < 4 ? 0.2 * off / static_cast<double>(n * n) : 0.0;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        double& apq = a[p * n + q];
        const double g = 100.0 * std::abs(apq);
        if (sweep > 4 && std::abs(d[p]) + g == std::abs(d[p]) &&
            std::abs(d[q]) + g == std::abs(d[q])) {
          apq = 0.0;
          continue;
        }
        if (std::abs(apq) <= tresh) continue;
        double h = d[q] - d[p];
        double t;
        if (std::abs(h) + g == std::abs(h)) {
          t = apq / h;
        } else {
          const double theta = 0.5 * h / apq;
          t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        h = t * apq;
        z[p] -= h;
        z[q] += h;
        d[p] -= h;
        d[q] += h;
        apq = 0.0;
        for (Eigen::Index j = 0; j < p; ++j) rotate(a[j * n + p], a[j * n + q], s, tau);
        for (Eigen::Index j = p + 1; j < q; ++j) rotate(a[p * n + j], a[j * n + q], s, tau);
        for (Eigen::Index j = q + 1; j < n; ++j) rotate(a[p * n + j], a[q * n + j], s, tau);
        if (want_vectors)
          for (Eigen::Index j = 0; j < n; ++j) rotate(v[j * n + p], v[j * n + q], s, tau);
      }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      b[i] += z[i];
      d[i] = b[i];
      z[i] = 0.0;
    }
  }
  if (!converged) {
    double off = 0.0, scale = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      scale += std::abs(d[p]);
      for (Eigen::Index q = p + 1; q < n; ++q) off += std::abs(a[p * n + q]);
    }
    if (off > 1e-12 * std::max(scale, 1e-300))
      throw NumericalError("jacobi_eigen: no convergence after maximum sweeps");
  }

  VectorXd raw = Eigen::Map<VectorXd>(d.data(), n);
  const auto order = descending_order(raw);
  SymmetricEigen out;
  out.values.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) out.values(k) = raw(order[k]);
  if (want_vectors) {
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      const int src = order[k];
      for (Eigen::Index j = 0; j < n; ++j) out.vectors(j, k) = v[j * n + src];
      Eigen::Index arg = 0;
      out.vectors.col(k).cwiseAbs().maxCoeff(&arg);
      if (out.vectors(arg, k) < 0.0) out.vectors.col(k) *= -1.0;
    }
  }
  return out;
}

HermitianEigen hermitian_eigen(const MatrixXcd& h, bool want_vectors) {
  const Eigen::Index p = h.rows();
  if (h.cols() != p) throw DimensionError("hermitian_eigen: matrix is not square");

  MatrixXd embed(2 * p, 2 * p);
  const MatrixXd re = h.real();
  const MatrixXd im = h.imag();
  embed.topLeftCorner(p, p) = re;
  embed.topRightCorner(p, p) = -im;
  embed.bottomLeftCorner(p, p) = im;
  embed.bottomRightCorner(p, p) = re;
  const SymmetricEigen real_eig = jacobi_eigen(embed, want_vectors);

  HermitianEigen out;
  out.values.resize(p);
  if (!want_vectors) {
    for (Eigen::Index j = 0; j < p; ++j)
      out.values(j) = 0.5 * (real_eig.values(2 * j) + real_eig.values(2 * j + 1));
    return out;
  }

  out.vectors.resize(p, p);
  const double scale = std::max(real_eig.values.cwiseAbs().maxCoeff(), 1e-300);
  const double cluster_tol = 1e-9 * scale;
  Eigen::Index accepted = 0;
  Eigen::Index start = 0;
  const Eigen::Index total = 2 * p;
  while (start < total) {
    // A cluster is a run of nearly equal eigenvalues; its size is forced even
    // so that it carries a whole number of complex dimensions.
    Eigen::Index end = start + 1;
    while (end < total &&
           (real_eig.values(end - 1) - real_eig.values(end) <= cluster_tol ||
            (end - start) % 2 == 1))
      ++end;
    const Eigen::Index size = end - start;
    const Eigen::Index keep = size / 2;

    std::vector<Eigen::VectorXcd> candidates;
    candidates.reserve(size);
    for (Eigen::Index c = start; c < end; ++c) {
      Eigen::VectorXcd zc(p);
      for (Eigen::Index i = 0; i < p; ++i)
        zc(i) = {real_eig.vectors(i, c), real_eig.vectors(i + p, c)};
      candidates.push_back(std::move(zc));
    }
    std::vector<bool> used(size, false);
    for (Eigen::Index taken = 0; taken < keep; ++taken) {
      // Greedy complex Gram-Schmidt: take the candidate with the largest
      // residual against the vectors already accepted in this cluster.
      double best_norm = -1.0;
      Eigen::Index best = -1;
      Eigen::VectorXcd best_res;
      for (Eigen::Index c = 0; c < size; ++c) {
        if (used[c]) continue;
        Eigen::VectorXcd r = candidates[c];
        for (Eigen::Index k = accepted - taken; k < accepted; ++k) {
          const std::complex<double> proj = out.vectors.col(k).dot(r);
          r -= proj * out.vectors.col(k);
        }
        const double nr = r.norm();
        if (nr > best_norm) {
          best_norm = nr;
          best = c;
          best_res = std::move(r);
        }
      }
      if (best < 0 || best_norm < 1e-6)
        throw NumericalError("hermitian_eigen: degenerate eigenvector pair");
      used[best] = true;
      best_res /= best_norm;
      Eigen::Index arg = 0;
      best_res.cwiseAbs().maxCoeff(&arg);
      const std::complex<double> phase = std::conj(best_res(arg)) / std::abs(best_res(arg));
      best_res *= phase;
      best_res(arg) = std::abs(best_res(arg));
      out.vectors.col(accepted) = best_res;
      out.values(accepted) =
          0.5 * (real_eig.values(start + 2 * taken) + real_eig.values(start + 2 * taken + 1));
      ++accepted;
    }
    start = end;
  }
  return out;
}

PsdProjection project_psd(const MatrixXd& g) {
  const SymmetricEigen eig = jacobi_eigen(symmetrize(g), true);
  PsdProjection out;
  out.max_eigenvalue = eig.values.size() ? eig.values(0) : 0.0;
  out.min_eigenvalue = eig.values.size() ? eig.values(eig.values.size() - 1) : 0.0;
  if (out.min_eigenvalue >= 0.0) {
    out.matrix = symmetrize(g);
    return out;
  }
  out.clipped = true;
  const VectorXd clipped = eig.values.cwiseMax(0.0);
  out.matrix = symmetrize(eig.vectors * clipped.asDiagonal() * eig.vectors.transpose());
  out.max_eigenvalue = std::max(out.max_eigenvalue, 0.0);
  return out;
}

double spectral_radius(const MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::EigenSolver<MatrixXd> solver(a, false);
  if (solver.info() != Eigen::Success) throw NumericalError("spectral_radius: eigensolver failed");
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace fnets::linalg
