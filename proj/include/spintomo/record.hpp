#pragma once

// Simulated measurement records and the linear inversion machinery: the
// stacked observable matrix, its Gram matrix (the sigma-scaled inverse
// covariance), pseudo-inverse estimates, and the positivity correction.

#include "spintomo/floquet.hpp"
#include "spintomo/linalg.hpp"
#include "spintomo/operator_basis.hpp"
#include "spintomo/rng.hpp"
#include "spintomo/states.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace spintomo {

// Relative eigenvalue threshold separating measured directions from the
// numerical null space of the Gram matrix.
inline constexpr double kPinvRelTol = 1e-10;

struct MeasurementRecord {
  RealVector m;        // sampled record values, length n
  RealMatrix otilde;   // n x (d^2-1), row i = Bloch coordinates of O_i
  double sigma = 0.0;  // detector noise standard deviation
  std::uint64_t seed = 0;
};

/// Bloch-coordinate rows of an observable sequence: row i = Tr(O_i E_a).
inline RealMatrix observable_rows(const ObservableSequence& seq, const OperatorBasis& basis) {
  const int n = static_cast<int>(seq.o.size());
  RealMatrix rows(n, basis.size());
  for (int i = 0; i < n; ++i) rows.row(i) = basis.project(seq.o[i]).transpose();
  return rows;
}

/// M_i = Tr(O_i rho0) + sigma * w_i with iid standard normal w_i.
inline MeasurementRecord simulate_record(const ObservableSequence& seq, const DensityMatrix& rho0,
                                         const OperatorBasis& basis, double sigma,
                                         std::uint64_t seed) {
  if (sigma < 0.0) throw std::invalid_argument("simulate_record: sigma must be nonnegative");
  if (rho0.rows() != basis.dim() || rho0.cols() != basis.dim())
    throw std::invalid_argument("simulate_record: state/basis dimension mismatch");
  if (!seq.o.empty() && seq.o.front().rows() != basis.dim())
    throw std::invalid_argument("simulate_record: observable/basis dimension mismatch");
  MeasurementRecord rec;
  rec.otilde = observable_rows(seq, basis);
  rec.sigma = sigma;
  rec.seed = seed;
  const int n = static_cast<int>(seq.o.size());
  rec.m.resize(n);
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    double v = (seq.o[i] * rho0).trace().real();
    if (sigma > 0.0) v += sigma * rng.gaussian();
    rec.m[i] = v;
  }
  return rec;
}

struct CovarianceSummary {
  int n = 0;             // number of record rows folded in
  double sigma = 0.0;    // record noise level (0 = sigma-scaled units)
  RealVector eigenvalues;  // of otilde^T otilde, sorted descending
  int rank = 0;          // count above kPinvRelTol * max eigenvalue
  double trace = 0.0;
  // Heavier fields, kept only where needed (empty when thinned out of a
  // time series).
  RealMatrix inv_c;         // otilde^T otilde
  RealMatrix eigenvectors;  // columns, same order as eigenvalues
};

/// Eigendecomposition summary of an accumulated Gram matrix.
inline CovarianceSummary summarize_covariance(const RealMatrix& gram, int n, double sigma,
                                              bool keep_matrices = true) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(gram);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("summarize_covariance: eigendecomposition failed");
  CovarianceSummary cov;
  cov.n = n;
  cov.sigma = sigma;
  cov.eigenvalues = es.eigenvalues().reverse();
  cov.trace = gram.trace();
  const double lmax = cov.eigenvalues.size() ? cov.eigenvalues[0] : 0.0;
  if (lmax > 0.0) {
    const double cut = kPinvRelTol * lmax;
    cov.rank = static_cast<int>((cov.eigenvalues.array() > cut).count());
  }
  if (keep_matrices) {
    cov.inv_c = gram;
    cov.eigenvectors = es.eigenvectors().rowwise().reverse();
  }
  return cov;
}

/// Pseudo-inverse solve r = pinv(otilde^T otilde) * b using a summary that
/// kept its eigenvectors.
inline BlochVector pinv_apply(const CovarianceSummary& cov, const RealVector& b) {
  if (cov.eigenvectors.size() == 0)
    throw std::invalid_argument("pinv_apply: summary does not carry eigenvectors");
  if (cov.rank == 0) throw std::runtime_error("pinv_apply: no measured directions");
  const auto v = cov.eigenvectors.leftCols(cov.rank);
  RealVector scaled = (v.transpose() * b).eval();
  for (int k = 0; k < cov.rank; ++k) scaled[k] /= cov.eigenvalues[k];
  return v * scaled;
}

/// Unconstrained ML estimate r_ml = pinv(otilde^T otilde) otilde^T m plus
/// the covariance summary. Throws if the record carries no information.
inline std::pair<BlochVector, CovarianceSummary> invert_record(const MeasurementRecord& rec) {
  if (rec.m.size() == 0) throw std::invalid_argument("invert_record: empty record");
  const RealMatrix gram = rec.otilde.transpose() * rec.otilde;
  CovarianceSummary cov =
      summarize_covariance(gram, static_cast<int>(rec.m.size()), rec.sigma, true);
  if (cov.rank == 0)
    throw std::runtime_error("invert_record: no information (all observable projections vanish)");
  const RealVector b = rec.otilde.transpose() * rec.m;
  return {pinv_apply(cov, b), std::move(cov)};
}

/// Euclidean projection of a real vector onto the probability simplex
/// { x >= 0, sum x = 1 }.
inline RealVector project_to_simplex(const RealVector& mu) {
  const int n = static_cast<int>(mu.size());
  std::vector<double> sorted(mu.data(), mu.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double cumsum = 0.0, theta = 0.0;
  for (int k = 0; k < n; ++k) {
    cumsum += sorted[k];
    const double candidate = (1.0 - cumsum) / (k + 1);
    if (sorted[k] + candidate > 0.0) theta = candidate;
  }
  RealVector x(n);
  for (int k = 0; k < n; ++k) x[k] = std::max(mu[k] + theta, 0.0);
  return x;
}

/// Closest physical state to the unconstrained estimate: rebuild rho_ml,
/// keep its eigenvectors, and project the spectrum onto the simplex
/// (minimizes Frobenius distance over valid spectra with fixed
/// eigenvectors).
inline DensityMatrix project_to_physical(const BlochVector& r_ml, const OperatorBasis& basis) {
  const Matrix rho_ml = basis.pack(r_ml);
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_ml);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("project_to_physical: eigendecomposition failed");
  const RealVector spectrum = project_to_simplex(es.eigenvalues());
  return es.eigenvectors() * spectrum.cast<std::complex<double>>().asDiagonal() *
         es.eigenvectors().adjoint();
}

struct ReconstructionResult {
  BlochVector r_ml;
  DensityMatrix rho_physical;
  double fidelity = 0.0;  // against the true state, when known
};

}  // namespace spintomo
