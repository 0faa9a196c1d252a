#pragma once

// Orthonormal traceless Hermitian basis of su(d) (generalized Gell-Mann).
// Element order is fixed: the (d^2-d)/2 symmetric off-diagonal pairs in
// row-major order, then the antisymmetric pairs in the same order, then the
// d-1 diagonal generators. The fixed order keeps covariance eigenbases
// reproducible across runs.

#include "spintomo/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace spintomo {

using BlochVector = RealVector;

class OperatorBasis {
 public:
  explicit OperatorBasis(int d) : d_(d) {
    if (d < 2) throw std::invalid_argument("OperatorBasis: dimension must be at least 2");
  }

  int dim() const { return d_; }
  int size() const { return d_ * d_ - 1; }
  int pair_count() const { return d_ * (d_ - 1) / 2; }

  // Index of the (j,k) off-diagonal pair, j < k, row-major.
  int pair_index(int j, int k) const { return j * d_ - j * (j + 1) / 2 + (k - j - 1); }

  /// Coordinates r_a = Tr(h E_a) of the traceless part of a Hermitian h.
  /// O(d^2) using the pair layout; h is assumed Hermitian.
  BlochVector project(const Matrix& h) const {
    if (h.rows() != d_ || h.cols() != d_)
      throw std::invalid_argument("OperatorBasis::project: dimension mismatch");
    static const double sqrt2 = std::sqrt(2.0);
    BlochVector r(size());
    const int np = pair_count();
    for (int j = 0; j < d_; ++j) {
      for (int k = j + 1; k < d_; ++k) {
        const int p = pair_index(j, k);
        r[p] = sqrt2 * h(j, k).real();
        r[np + p] = -sqrt2 * h(j, k).imag();
      }
    }
    double running = 0.0;  // sum of the first l diagonal entries
    for (int l = 1; l < d_; ++l) {
      running += h(l - 1, l - 1).real();
      r[2 * np + l - 1] = (running - l * h(l, l).real()) / std::sqrt(double(l) * (l + 1.0));
    }
    return r;
  }

  /// Density matrix I/d + sum_a r_a E_a. Inverse of project on unit-trace
  /// Hermitian inputs.
  Matrix pack(const BlochVector& r) const {
    if (r.size() != size())
      throw std::invalid_argument("OperatorBasis::pack: dimension mismatch");
    static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Matrix h = Matrix::Zero(d_, d_);
    const int np = pair_count();
    for (int j = 0; j < d_; ++j) {
      for (int k = j + 1; k < d_; ++k) {
        const int p = pair_index(j, k);
        const std::complex<double> v(r[p] * inv_sqrt2, -r[np + p] * inv_sqrt2);
        h(j, k) = v;
        h(k, j) = std::conj(v);
      }
    }
    for (int l = 1; l < d_; ++l) {
      const double c = r[2 * np + l - 1] / std::sqrt(double(l) * (l + 1.0));
      for (int k = 0; k < l; ++k) h(k, k) += c;
      h(l, l) -= double(l) * c;
    }
    for (int k = 0; k < d_; ++k) h(k, k) += 1.0 / d_;
    return h;
  }

  /// Explicit basis matrices in canonical order. Built on demand; the hot
  /// paths (project/pack) never materialize them.
  std::vector<Matrix> elements() const {
    std::vector<Matrix> es;
    es.reserve(size());
    static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < d_; ++j) {
      for (int k = j + 1; k < d_; ++k) {
        Matrix e = Matrix::Zero(d_, d_);
        e(j, k) = inv_sqrt2;
        e(k, j) = inv_sqrt2;
        es.push_back(e);
      }
    }
    for (int j = 0; j < d_; ++j) {
      for (int k = j + 1; k < d_; ++k) {
        Matrix e = Matrix::Zero(d_, d_);
        e(j, k) = std::complex<double>(0.0, -inv_sqrt2);
        e(k, j) = std::complex<double>(0.0, inv_sqrt2);
        es.push_back(e);
      }
    }
    for (int l = 1; l < d_; ++l) {
      Matrix e = Matrix::Zero(d_, d_);
      const double c = 1.0 / std::sqrt(double(l) * (l + 1.0));
      for (int k = 0; k < l; ++k) e(k, k) = c;
      e(l, l) = -double(l) * c;
      es.push_back(e);
    }
    return es;
  }

 private:
  int d_;
};

/// r_a = Tr(rho E_a).
inline BlochVector bloch_expand(const Matrix& rho, const OperatorBasis& basis) {
  return basis.project(rho);
}

/// rho = I/d + sum_a r_a E_a.
inline Matrix bloch_pack(const BlochVector& r, const OperatorBasis& basis) {
  return basis.pack(r);
}

}  // namespace spintomo
