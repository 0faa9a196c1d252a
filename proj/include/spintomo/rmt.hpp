#pragma once

// Random unitary ensembles and the closed-form entropy predictions for the
// asymptotic inverse-covariance spectrum of each symmetry class.

#include "spintomo/floquet.hpp"
#include "spintomo/linalg.hpp"
#include "spintomo/rng.hpp"
#include "spintomo/spin_system.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace spintomo {

enum class EnsembleKind { CUE, COE, ParityBlockCOE, HaarPerStep };

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::CUE;
  int d = 2;
  // Parity block sizes ((d+1)/2, (d-1)/2 by default at odd d).
  std::pair<int, int> block_sizes{0, 0};
};

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the
/// R-diagonal phase correction.
inline Matrix sample_haar(int d, Rng& rng) {
  if (d < 2) throw std::invalid_argument("sample_haar: dimension must be at least 2");
  Matrix g(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) g(r, c) = rng.complex_gaussian();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r_fac = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < d; ++c) {
    const std::complex<double> rc = r_fac(c, c);
    const double mag = std::abs(rc);
    const std::complex<double> phase = (mag > 0.0) ? rc / mag : std::complex<double>(1.0, 0.0);
    q.col(c) *= phase;
  }
  return q;
}

/// COE sample U = W W^T with W Haar; unitary and symmetric.
inline Matrix sample_coe(int d, Rng& rng) {
  const Matrix w = sample_haar(d, rng);
  return w * w.transpose();
}

struct ParityBasis {
  Matrix columns;  // first the -1 eigenvectors, then the +1
  int dim_minus = 0;
  int dim_plus = 0;
};

/// Eigenbasis of the parity operator R = e^{-i pi Jx}, split by eigenvalue
/// sign. Requires integer spin (R is then an involution with eigenvalues
/// +-1). Degenerate-subspace bases come out orthonormal from the solver.
inline ParityBasis parity_eigenbasis(const SpinSystem& s, double cluster_tol = 1e-8) {
  if (!s.integer_spin())
    throw std::invalid_argument("parity_eigenbasis: integer spin required");
  const Matrix r = parity_operator(s);
  const Matrix sym = 0.5 * (r + r.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  const RealVector& w = es.eigenvalues();  // ascending: -1 cluster first
  ParityBasis basis;
  basis.columns = es.eigenvectors();
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    if (std::abs(w[k] + 1.0) < cluster_tol)
      ++basis.dim_minus;
    else if (std::abs(w[k] - 1.0) < cluster_tol)
      ++basis.dim_plus;
    else
      throw std::runtime_error("parity_eigenbasis: eigenvalue not clustered at +-1");
  }
  return basis;
}

/// COE matrix commuting with parity: independent COE blocks on the two
/// parity eigenspaces, rotated back to the standard basis.
inline Matrix sample_parity_block_coe(const SpinSystem& s, Rng& rng) {
  const ParityBasis basis = parity_eigenbasis(s);
  const int a = basis.dim_minus;
  const int b = basis.dim_plus;
  if (a + b != s.d || std::abs(a - b) != 1)
    throw std::runtime_error("sample_parity_block_coe: parity eigenspace bookkeeping mismatch");
  Matrix block = Matrix::Zero(s.d, s.d);
  block.topLeftCorner(a, a) = sample_coe(a, rng);
  block.bottomRightCorner(b, b) = sample_coe(b, rng);
  return basis.columns * block * basis.columns.adjoint();
}

// Expected Shannon-entropy deficit of the squared entries of a random unit
// vector relative to the flat distribution: 2 - gamma - ln 2.
inline constexpr double kRandomStateEntropyDeficit = 0.729637;

/// Closed-form prediction (nats) for the asymptotic entropy of the
/// normalized inverse-covariance spectrum under each driving class.
inline double wootters_entropy_prediction(EnsembleKind kind, int d) {
  if (d < 2)
    throw std::invalid_argument("wootters_entropy_prediction: dimension must be at least 2");
  const double dim = double(d) * d - 1.0;
  switch (kind) {
    case EnsembleKind::ParityBlockCOE:
      return std::log(dim / 2.0) - kRandomStateEntropyDeficit;
    case EnsembleKind::CUE:
    case EnsembleKind::COE:
      return std::log(dim) - kRandomStateEntropyDeficit;
    case EnsembleKind::HaarPerStep:
      return std::log(dim);
  }
  throw std::invalid_argument("wootters_entropy_prediction: unsupported ensemble kind");
}

/// Observable sequence driven by a fresh Haar unitary every step:
/// O_i = V_i^dag O_{i-1} V_i, so O_i = (V_1...V_i)^dag O_0 (V_1...V_i).
inline ObservableSequence per_step_haar_sequence(const SpinSystem& s, const Matrix& o0, int n,
                                                 std::uint64_t seed) {
  Rng rng(seed);
  return conjugation_sequence([&s, &rng](int) { return sample_haar(s.d, rng); }, o0, n);
}

}  // namespace spintomo
