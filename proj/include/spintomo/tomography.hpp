#pragma once

// End-to-end tomography runs: pick a driving map or ensemble, stream the
// Heisenberg observable rows, simulate the record, and invert cumulatively
// at each kick count.

#include "spintomo/classical_top.hpp"
#include "spintomo/metrics.hpp"
#include "spintomo/record.hpp"
#include "spintomo/rmt.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace spintomo {

enum class DriveKind { KickedTopTR, KickedTopNoTR, COE, CUE, ParityBlockCOE, HaarPerStep, FixedUnitary };

struct DriveSpec {
  DriveKind kind = DriveKind::KickedTopTR;
  double alpha = 1.4;
  double lambda = 7.0;
  ThreeAxisParams three_axis;
  Matrix fixed_u;  // FixedUnitary only
};

/// Streams Bloch-coordinate rows of the Heisenberg sequence O_i without
/// materializing it; ensemble drives sample their unitary from the seed.
class ObservableRowStream {
 public:
  ObservableRowStream(const SpinSystem& s, const OperatorBasis& basis, const DriveSpec& drive,
                      Matrix o0, std::uint64_t seed)
      : basis_(basis), cur_(std::move(o0)), rng_(seed), d_(s.d) {
    switch (drive.kind) {
      case DriveKind::KickedTopTR:
        u_ = kicked_top_tr(s, drive.alpha, drive.lambda).u;
        break;
      case DriveKind::KickedTopNoTR:
        u_ = kicked_top_no_tr(s, drive.three_axis).u;
        break;
      case DriveKind::COE:
        u_ = sample_coe(s.d, rng_);
        break;
      case DriveKind::CUE:
        u_ = sample_haar(s.d, rng_);
        break;
      case DriveKind::ParityBlockCOE:
        u_ = sample_parity_block_coe(s, rng_);
        break;
      case DriveKind::HaarPerStep:
        per_step_ = true;
        break;
      case DriveKind::FixedUnitary:
        if (drive.fixed_u.rows() != s.d || drive.fixed_u.cols() != s.d)
          throw std::invalid_argument("ObservableRowStream: fixed unitary dimension mismatch");
        u_ = drive.fixed_u;
        break;
    }
  }

  /// Bloch row of the next observable O_i (and the raw near-zero-trace
  /// observable itself via current()).
  RealVector next_row() {
    if (per_step_) u_ = sample_haar(d_, rng_);
    cur_ = (u_.adjoint() * cur_ * u_).eval();
    cur_ = 0.5 * (cur_ + cur_.adjoint());
    return basis_.project(cur_);
  }

  const Matrix& current() const { return cur_; }

  /// The repeated map, when there is one.
  const Matrix& map() const {
    if (per_step_) throw std::logic_error("ObservableRowStream: per-step drive has no fixed map");
    return u_;
  }

 private:
  const OperatorBasis& basis_;
  Matrix cur_;
  Rng rng_;
  int d_ = 0;
  Matrix u_;
  bool per_step_ = false;
};

struct TomographyRun {
  std::vector<MetricsPoint> series;  // one entry per evaluated kick count
  ReconstructionResult final_result;
  CovarianceSummary final_cov;  // carries matrices
};

struct SpectrumPoint {
  int n = 0;
  double entropy = 0.0;
  double fisher = 0.0;
  int rank = 0;
  double trace = 0.0;
  double log_det = 0.0;
};

/// State-independent evolution of the inverse-covariance spectrum under a
/// drive. Rows are streamed in blocks and folded with one rank-k update
/// per block.
inline std::vector<SpectrumPoint> covariance_series(const SpinSystem& s,
                                                    const OperatorBasis& basis,
                                                    const DriveSpec& drive, int n,
                                                    std::uint64_t seed,
                                                    const std::vector<int>& eval_points) {
  if (n < 1) throw std::invalid_argument("covariance_series: kick count must be >= 1");
  for (std::size_t k = 0; k < eval_points.size(); ++k) {
    const bool ordered = k == 0 || eval_points[k] > eval_points[k - 1];
    if (!ordered || eval_points[k] < 1 || eval_points[k] > n)
      throw std::invalid_argument("covariance_series: eval points must be ascending in [1, n]");
  }
  ObservableRowStream stream(s, basis, drive, s.jz, derive_seed(seed, 1));
  const int dim = basis.size();
  RealMatrix gram = RealMatrix::Zero(dim, dim);
  std::vector<SpectrumPoint> out;
  out.reserve(eval_points.size());

  constexpr int kBlock = 256;
  RealMatrix block(kBlock, dim);
  int filled = 0;
  std::size_t next_eval = 0;
  auto flush = [&] {
    if (filled == 0) return;
    gram.selfadjointView<Eigen::Lower>().rankUpdate(block.topRows(filled).transpose(), 1.0);
    filled = 0;
  };
  for (int i = 1; i <= n && next_eval < eval_points.size(); ++i) {
    block.row(filled++) = stream.next_row().transpose();
    if (filled == kBlock) flush();
    if (i != eval_points[next_eval]) continue;
    ++next_eval;
    flush();
    const RealMatrix full = gram.selfadjointView<Eigen::Lower>();
    const CovarianceSummary cov = summarize_covariance(full, i, 0.0, false);
    SpectrumPoint pt;
    pt.n = i;
    pt.entropy = covariance_entropy(cov);
    pt.fisher = collective_fisher(cov, 0.0);
    pt.rank = cov.rank;
    pt.trace = cov.trace;
    pt.log_det = log_det_measured(cov);
    out.push_back(pt);
  }
  return out;
}

/// Full pipeline for one true state: simulate the record under the drive,
/// invert cumulatively at each evaluation point (default: every kick),
/// apply the positivity correction, and score the fidelity.
inline TomographyRun run_tomography(const SpinSystem& s, const OperatorBasis& basis,
                                    const DriveSpec& drive, const DensityMatrix& rho0, int n,
                                    double sigma, std::uint64_t seed,
                                    std::vector<int> eval_points = {}) {
  if (n < 1) throw std::invalid_argument("run_tomography: kick count must be >= 1");
  if (std::abs(purity(rho0) - 1.0) > 1e-8)
    throw std::invalid_argument("run_tomography: target state must be pure");
  Eigen::SelfAdjointEigenSolver<Matrix> true_es(rho0);
  const Vector psi_true = true_es.eigenvectors().col(s.d - 1);

  if (eval_points.empty()) {
    eval_points.resize(n);
    for (int i = 0; i < n; ++i) eval_points[i] = i + 1;
  }
  for (std::size_t k = 0; k < eval_points.size(); ++k) {
    const bool ordered = k == 0 || eval_points[k] > eval_points[k - 1];
    if (!ordered || eval_points[k] < 1 || eval_points[k] > n)
      throw std::invalid_argument("run_tomography: eval points must be ascending in [1, n]");
  }

  ObservableRowStream stream(s, basis, drive, s.jz, derive_seed(seed, 1));
  Rng noise(derive_seed(seed, 2));

  const int dim = basis.size();
  RealMatrix gram = RealMatrix::Zero(dim, dim);
  RealVector b = RealVector::Zero(dim);

  TomographyRun run;
  run.series.reserve(eval_points.size());
  std::size_t next_eval = 0;
  for (int i = 1; i <= n && next_eval < eval_points.size(); ++i) {
    const RealVector row = stream.next_row();
    double m = (stream.current() * rho0).trace().real();
    if (sigma > 0.0) m += sigma * noise.gaussian();
    gram.selfadjointView<Eigen::Lower>().rankUpdate(row, 1.0);
    b += m * row;

    if (i != eval_points[next_eval]) continue;
    ++next_eval;
    const RealMatrix full = gram.selfadjointView<Eigen::Lower>();
    CovarianceSummary cov = summarize_covariance(full, i, sigma, true);
    const BlochVector r_ml = pinv_apply(cov, b);
    const DensityMatrix rho_phys = project_to_physical(r_ml, basis);

    MetricsPoint pt;
    pt.n = i;
    pt.fidelity = fidelity(psi_true, rho_phys);
    pt.entropy = covariance_entropy(cov);
    pt.fisher = collective_fisher(cov, sigma);
    pt.log_inv_volume = log_inverse_volume(cov, sigma);
    pt.rank = cov.rank;
    pt.trace = cov.trace;
    run.series.push_back(pt);

    if (next_eval == eval_points.size()) {
      run.final_result = {r_ml, rho_phys, pt.fidelity};
      cov.eigenvectors.resize(0, 0);  // keep inv_c and spectrum, drop the heavy basis
      run.final_cov = std::move(cov);
    }
  }
  return run;
}

}  // namespace spintomo
