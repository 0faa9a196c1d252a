#pragma once

// Deterministic random streams. Uniform and Gaussian draws are generated
// from mt19937_64 directly; std::uniform_real_distribution and
// std::normal_distribution are implementation-defined and would break the
// bit-identical-across-runs contract.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace spintomo {

// Derive an independent stream seed from a master seed and a task index
// (splitmix64 finalizer). Parallel workers derive their stream from the
// task index, never from scheduling order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t task_index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (task_index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal (Marsaglia polar method).
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  /// Independent standard normals in both components.
  std::complex<double> complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace spintomo
