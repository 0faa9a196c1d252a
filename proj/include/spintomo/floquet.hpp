#pragma once

// Kicked-top Floquet unitaries, the time-reversal and parity symmetry
// operators, and Heisenberg-picture observable sequences.
//
// One driving period is a linear precession about x followed by a torsion
// about an axis, with the torsion generator normalized as J^2/(2j). Both
// map families below share that normalization.

#include "spintomo/linalg.hpp"
#include "spintomo/spin_system.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace spintomo {

enum class MapKind { KickedTopTR, KickedTopNoTR, SampledUnitary };

struct FloquetMap {
  Matrix u;
  MapKind kind = MapKind::SampledUnitary;
  std::map<std::string, double> params;
};

/// One period of the time-reversal-invariant kicked top:
/// U = exp(-i lambda Jz^2 / (2j)) * exp(-i alpha Jx).
inline FloquetMap kicked_top_tr(const SpinSystem& s, double alpha, double lambda) {
  const Matrix torsion = expm_hermitian(s.jz * s.jz / (2.0 * s.j), lambda);
  const Matrix precession = expm_hermitian(s.jx, alpha);
  FloquetMap m;
  m.u = torsion * precession;
  m.kind = MapKind::KickedTopTR;
  m.params = {{"alpha", alpha}, {"lambda", lambda}};
  return m;
}

struct ThreeAxisParams {
  std::array<double, 3> lambda{7.0, 7.0, 7.0};
  std::array<double, 3> alpha{1.4, 1.4, 1.4};
};

/// Kicked top without time-reversal symmetry: a product of three
/// torsion-plus-rotation factors about x, y, z,
/// U = prod_i exp(-i (lambda_i J_i^2/(2j) + alpha_i J_i)).
inline FloquetMap kicked_top_no_tr(const SpinSystem& s, const ThreeAxisParams& p) {
  const std::array<const Matrix*, 3> axes{&s.jx, &s.jy, &s.jz};
  Matrix u = Matrix::Identity(s.d, s.d);
  for (int i = 0; i < 3; ++i) {
    const Matrix gen = p.lambda[i] * (*axes[i] * *axes[i]) / (2.0 * s.j) + p.alpha[i] * *axes[i];
    u = u * expm_hermitian(gen, 1.0);
  }
  FloquetMap m;
  m.u = u;
  m.kind = MapKind::KickedTopNoTR;
  m.params = {{"lambda1", p.lambda[0]}, {"lambda2", p.lambda[1]}, {"lambda3", p.lambda[2]},
              {"alpha1", p.alpha[0]},   {"alpha2", p.alpha[1]},   {"alpha3", p.alpha[2]}};
  return m;
}

/// || e^{i alpha Jx} conj(U) e^{-i alpha Jx} - U^dag ||_F, the residual of
/// the anti-unitary reversal T = e^{i alpha Jx} K acting as T U T^-1 = U^dag.
inline double time_reversal_residual(const SpinSystem& s, const FloquetMap& m, double alpha) {
  const Matrix rot = expm_hermitian(s.jx, -alpha);  // e^{+i alpha Jx}
  return (rot * m.u.conjugate() * rot.adjoint() - m.u.adjoint()).norm();
}

/// Parity operator R = e^{-i pi Jx}. Commutes with the TR kicked top and
/// anticommutes with Jz.
inline Matrix parity_operator(const SpinSystem& s) {
  return expm_hermitian(s.jx, std::numbers::pi);
}

struct ObservableSequence {
  Matrix o0;              // initial observable
  std::vector<Matrix> o;  // o[i-1] = O_i, i = 1..n
};

/// Heisenberg sequence O_i = (U^dag)^i O_0 U^i, built by iterated
/// conjugation with a caller-supplied unitary for each step.
template <class NextUnitary>
ObservableSequence conjugation_sequence(NextUnitary&& next, const Matrix& o0, int n) {
  if (n < 1) throw std::invalid_argument("conjugation_sequence: kick count must be >= 1");
  if (hermiticity_residual(o0) > 1e-10)
    throw std::invalid_argument("conjugation_sequence: initial observable is not Hermitian");
  ObservableSequence seq;
  seq.o0 = o0;
  seq.o.reserve(n);
  Matrix cur = o0;
  for (int i = 0; i < n; ++i) {
    decltype(auto) u = next(i);
    cur = (u.adjoint() * cur * u).eval();
    cur = 0.5 * (cur + cur.adjoint());  // re-symmetrize roundoff
    seq.o.push_back(cur);
  }
  return seq;
}

/// O_i = (U^dag)^i O_0 U^i for a fixed map, i = 1..n.
inline ObservableSequence heisenberg_sequence(const FloquetMap& map, const Matrix& o0, int n) {
  return conjugation_sequence([&map](int) -> const Matrix& { return map.u; }, o0, n);
}

}  // namespace spintomo
