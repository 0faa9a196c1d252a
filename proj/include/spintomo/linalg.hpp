#pragma once

// Dense complex linear algebra helpers shared by every module.

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

namespace spintomo {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline double hermiticity_residual(const Matrix& m) {
  return (m - m.adjoint()).norm();
}

inline double unitarity_residual(const Matrix& u) {
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm();
}

/// e^{-i t H} for Hermitian H, via eigendecomposition. Eigenphases are put
/// on the unit circle exactly, so the result is unitary to roundoff even
/// for large |t|.
inline Matrix expm_hermitian(const Matrix& h, double t, double herm_tol = 1e-10) {
  if (h.rows() != h.cols())
    throw std::invalid_argument("expm_hermitian: matrix must be square");
  if (hermiticity_residual(h) > herm_tol)
    throw std::invalid_argument("expm_hermitian: generator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("expm_hermitian: eigendecomposition failed");
  const Eigen::VectorXd& w = es.eigenvalues();
  Vector phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k)
    phases[k] = std::polar(1.0, -w[k] * t);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace spintomo
