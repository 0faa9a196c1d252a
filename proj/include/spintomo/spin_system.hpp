#pragma once

// Spin-j representation: angular momentum matrices in the |j,m> basis,
// ordered m = j, j-1, ..., -j so that |j,j> is the first basis vector.

#include "spintomo/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace spintomo {

struct SpinSystem {
  double j = 0.0;  // spin quantum number, half-integer
  int d = 0;       // Hilbert dimension 2j+1
  Matrix jx, jy, jz;

  bool integer_spin() const { return d % 2 == 1; }
};

inline SpinSystem make_spin_system(double j) {
  const double two_j = 2.0 * j;
  if (j < 0.0 || std::abs(two_j - std::round(two_j)) > 1e-9)
    throw std::invalid_argument("make_spin_system: j must be a non-negative half-integer");
  const int d = static_cast<int>(std::round(two_j)) + 1;

  // Ladder operator J+ with <j,m+1|J+|j,m> = sqrt(j(j+1) - m(m+1));
  // column i holds m = j - i, the raised state sits one row up.
  Matrix jp = Matrix::Zero(d, d);
  for (int i = 1; i < d; ++i) {
    const double m = j - i;
    jp(i - 1, i) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }

  SpinSystem s;
  s.j = j;
  s.d = d;
  s.jx = 0.5 * (jp + jp.adjoint());
  s.jy = std::complex<double>(0.0, -0.5) * (jp - jp.adjoint());
  s.jz = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) s.jz(i, i) = j - i;
  return s;
}

}  // namespace spintomo
