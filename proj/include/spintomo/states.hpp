#pragma once

// Pure states and density matrices.

#include "spintomo/linalg.hpp"
#include "spintomo/rng.hpp"
#include "spintomo/spin_system.hpp"

#include <stdexcept>

namespace spintomo {

using DensityMatrix = Matrix;

/// State vector drawn from the unitarily invariant measure: a vector of
/// independent standard complex Gaussians, normalized.
inline Vector random_state_vector(int d, Rng& rng) {
  if (d < 2) throw std::invalid_argument("random_state_vector: dimension must be at least 2");
  Vector z(d);
  for (int k = 0; k < d; ++k) z[k] = rng.complex_gaussian();
  z.normalize();
  return z;
}

inline DensityMatrix random_pure_state(int d, Rng& rng) {
  const Vector z = random_state_vector(d, rng);
  return z * z.adjoint();
}

/// Rotated highest-weight state e^{-i phi Jz} e^{-i theta Jy} |j,j>.
inline Vector spin_coherent_vector(const SpinSystem& s, double theta, double phi) {
  Vector top = Vector::Zero(s.d);
  top[0] = 1.0;
  return expm_hermitian(s.jz, phi) * (expm_hermitian(s.jy, theta) * top);
}

inline DensityMatrix spin_coherent_state(const SpinSystem& s, double theta, double phi) {
  const Vector psi = spin_coherent_vector(s, theta, phi);
  return psi * psi.adjoint();
}

inline double purity(const DensityMatrix& rho) {
  return (rho * rho).trace().real();
}

inline double min_eigenvalue_hermitian(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace spintomo
