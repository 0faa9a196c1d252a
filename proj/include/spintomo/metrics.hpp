#pragma once

// Information-gain metrics: reconstruction fidelity, Shannon entropy of the
// normalized inverse-covariance spectrum, collective Fisher information,
// the log inverse error-ellipsoid volume, and the analytic large-n
// prediction of the inverse-covariance spectrum from the Floquet
// eigenbasis.
//
// All entropies and logarithms are in nats. When sigma = 0 the metrics are
// reported in sigma-scaled units (sigma^2 == 1).

#include "spintomo/linalg.hpp"
#include "spintomo/record.hpp"
#include "spintomo/rmt.hpp"
#include "spintomo/states.hpp"

#include <cmath>
#include <stdexcept>

namespace spintomo {

/// F = <psi| rho |psi>.
inline double fidelity(const Vector& psi_true, const DensityMatrix& rho_est) {
  if (psi_true.size() != rho_est.rows())
    throw std::invalid_argument("fidelity: dimension mismatch");
  if (std::abs(psi_true.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("fidelity: true state must be normalized");
  return std::real(psi_true.dot(rho_est * psi_true));
}

/// Overload for a pure target given as a density matrix. Rejects mixed
/// targets (the metric is defined against pure states).
inline double fidelity(const DensityMatrix& rho_true, const DensityMatrix& rho_est) {
  if (std::abs(purity(rho_true) - 1.0) > 1e-8)
    throw std::invalid_argument("fidelity: target state must be pure");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_true);
  const Vector psi = es.eigenvectors().col(rho_true.rows() - 1);  // largest eigenvalue
  return fidelity(psi, rho_est);
}

/// Shannon entropy (nats) of the normalized eigenvalues of the inverse
/// covariance; measures how evenly the operator-space directions have been
/// sampled.
inline double covariance_entropy(const CovarianceSummary& cov) {
  double total = 0.0;
  for (Eigen::Index k = 0; k < cov.eigenvalues.size(); ++k)
    total += std::max(cov.eigenvalues[k], 0.0);
  if (total <= 0.0) throw std::invalid_argument("covariance_entropy: all-zero spectrum");
  double h = 0.0;
  for (Eigen::Index k = 0; k < cov.eigenvalues.size(); ++k) {
    const double p = std::max(cov.eigenvalues[k], 0.0) / total;
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

/// Collective Fisher information 1/Tr(C), with C restricted to the measured
/// subspace. sigma = 0 means sigma-scaled units.
inline double collective_fisher(const CovarianceSummary& cov, double sigma) {
  if (cov.rank < 1) throw std::invalid_argument("collective_fisher: empty measured subspace");
  const double s2 = (sigma > 0.0) ? sigma * sigma : 1.0;
  double trace_c = 0.0;
  for (int k = 0; k < cov.rank; ++k) trace_c += s2 / cov.eigenvalues[k];
  return 1.0 / trace_c;
}

/// log(1/V) = -(1/2) log det C over the measured subspace; the mutual
/// information between the Bloch vector and the record, up to the constant
/// record entropy.
inline double log_inverse_volume(const CovarianceSummary& cov, double sigma) {
  if (cov.rank < 1) throw std::invalid_argument("log_inverse_volume: empty measured subspace");
  const double s2 = (sigma > 0.0) ? sigma * sigma : 1.0;
  double sum = 0.0;
  for (int k = 0; k < cov.rank; ++k) sum += std::log(cov.eigenvalues[k] / s2);
  return 0.5 * sum;
}

/// log det of the measured block of the inverse covariance (sigma-scaled).
inline double log_det_measured(const CovarianceSummary& cov) {
  double sum = 0.0;
  for (int k = 0; k < cov.rank; ++k) sum += std::log(cov.eigenvalues[k]);
  return sum;
}

struct MetricsPoint {
  int n = 0;
  double fidelity = 0.0;
  double entropy = 0.0;
  double fisher = 0.0;
  double log_inv_volume = 0.0;
  int rank = 0;
  double trace = 0.0;
};

struct AsymptoticPrediction {
  RealVector spectrum;  // normalized inverse-covariance eigenvalues, descending
  double entropy = 0.0;
  int support = 0;  // count of structurally nonzero eigenvalues
  bool degenerate_phases = false;  // prediction unreliable when true
};

namespace detail {

// Eigenbasis of a unitary map. With a parity operator given, the basis is
// built per parity block so that it simultaneously diagonalizes both.
inline Matrix unitary_eigenbasis(const Matrix& u, const SpinSystem* system_for_parity) {
  if (system_for_parity != nullptr) {
    const ParityBasis pb = parity_eigenbasis(*system_for_parity);
    const Matrix u_rot = pb.columns.adjoint() * u * pb.columns;
    const int a = pb.dim_minus, b = pb.dim_plus;
    if (u_rot.topRightCorner(a, b).norm() > 1e-8 || u_rot.bottomLeftCorner(b, a).norm() > 1e-8)
      throw std::invalid_argument("asymptotic_inv_covariance: map does not commute with parity");
    Eigen::ComplexSchur<Matrix> sa(u_rot.topLeftCorner(a, a));
    Eigen::ComplexSchur<Matrix> sb(u_rot.bottomRightCorner(b, b));
    Matrix q = Matrix::Zero(u.rows(), u.cols());
    q.topLeftCorner(a, a) = sa.matrixU();
    q.bottomRightCorner(b, b) = sb.matrixU();
    return pb.columns * q;
  }
  Eigen::ComplexSchur<Matrix> schur(u);
  return schur.matrixU();
}

inline bool has_degenerate_phases(const Matrix& u, const Matrix& q, double tol) {
  const Matrix t = q.adjoint() * u * q;
  std::vector<double> phases(t.rows());
  for (Eigen::Index k = 0; k < t.rows(); ++k) phases[k] = std::arg(t(k, k));
  std::sort(phases.begin(), phases.end());
  const int n = static_cast<int>(phases.size());
  for (int k = 0; k < n; ++k) {
    const double gap = (k + 1 < n) ? phases[k + 1] - phases[k]
                                   : phases[0] + 2.0 * std::numbers::pi - phases[k];
    if (std::abs(gap) < tol) return true;
  }
  return false;
}

}  // namespace detail

/// Large-n prediction for the spectrum of (otilde^T otilde)/n from the map
/// eigenbasis {|u_k>}: eigenvalue |<u_k|O_0|u_j>|^2 twice for each pair
/// k<j, one eigenvalue sum_k <u_k|O_0|u_k>^2 from the coupled diagonal
/// sector, and d-2 structural zeros. Assumes nondegenerate eigenphases
/// (flagged otherwise).
inline AsymptoticPrediction asymptotic_inv_covariance(const Matrix& u, const Matrix& o0,
                                                      const SpinSystem* system_for_parity =
                                                          nullptr) {
  if (u.rows() != u.cols() || u.rows() != o0.rows())
    throw std::invalid_argument("asymptotic_inv_covariance: dimension mismatch");
  if (unitarity_residual(u) > 1e-8)
    throw std::invalid_argument("asymptotic_inv_covariance: map is not unitary");
  const int d = static_cast<int>(u.rows());
  const Matrix q = detail::unitary_eigenbasis(u, system_for_parity);
  const Matrix m = q.adjoint() * o0 * q;

  AsymptoticPrediction pred;
  pred.degenerate_phases = detail::has_degenerate_phases(u, q, 1e-10);

  RealVector spec(d * d - 1);
  int idx = 0;
  for (int k = 0; k < d; ++k) {
    for (int j = k + 1; j < d; ++j) {
      const double w = std::norm(m(k, j));
      spec[idx++] = w;
      spec[idx++] = w;
    }
  }
  double diag_weight = 0.0;
  for (int k = 0; k < d; ++k) diag_weight += m(k, k).real() * m(k, k).real();
  spec[idx++] = diag_weight;
  for (; idx < spec.size(); ++idx) spec[idx] = 0.0;

  std::sort(spec.data(), spec.data() + spec.size(), std::greater<double>());
  const double total = spec.sum();
  if (total <= 0.0)
    throw std::invalid_argument("asymptotic_inv_covariance: observable has no support");
  spec /= total;
  pred.spectrum = spec;
  const double thresh = 1e-10 * spec[0];
  double h = 0.0;
  int support = 0;
  for (Eigen::Index k = 0; k < spec.size(); ++k) {
    if (spec[k] > thresh) {
      ++support;
      if (spec[k] > 0.0) h -= spec[k] * std::log(spec[k]);
    }
  }
  pred.entropy = h;
  pred.support = support;
  return pred;
}

}  // namespace spintomo
