#pragma once

// Classical kicked top on the unit sphere and its correspondence with the
// quantum map. One step: rotate about x by alpha, then rotate about z by
// lambda times the post-precession z component (right-hand rule for both;
// the convention is pinned by correspondence_check against the Heisenberg
// evolution of <J>/j).

#include "spintomo/floquet.hpp"
#include "spintomo/rng.hpp"
#include "spintomo/spin_system.hpp"
#include "spintomo/states.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace spintomo {

struct SpherePoint {
  double x = 0.0, y = 0.0, z = 1.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline SpherePoint classical_kick_map(const SpherePoint& p, double alpha, double lambda) {
  if (std::abs(p.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("classical_kick_map: input must be a unit vector");
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  SpherePoint q;
  q.x = p.x;
  q.y = ca * p.y - sa * p.z;
  q.z = sa * p.y + ca * p.z;
  const double phi = lambda * q.z;
  const double cp = std::cos(phi), sp = std::sin(phi);
  SpherePoint r;
  r.x = cp * q.x - sp * q.y;
  r.y = sp * q.x + cp * q.y;
  r.z = q.z;
  return r;
}

inline SpherePoint random_sphere_point(Rng& rng) {
  const double z = 2.0 * rng.uniform() - 1.0;
  const double phi = 2.0 * std::numbers::pi * rng.uniform();
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {s * std::cos(phi), s * std::sin(phi), z};
}

struct PortraitPoint {
  int traj = 0;
  int step = 0;
  double y = 0.0;
  double z = 0.0;
};

/// Iterates the classical map from n_traj random starts and records the
/// (Y,Z) coordinates of every visit to the X<0 hemisphere.
inline std::vector<PortraitPoint> phase_portrait(double alpha, double lambda, int n_traj,
                                                 int n_steps, std::uint64_t seed) {
  if (n_traj < 1 || n_steps < 1)
    throw std::invalid_argument("phase_portrait: counts must be >= 1");
  std::vector<PortraitPoint> out;
  out.reserve(static_cast<std::size_t>(n_traj) * n_steps / 2);
  for (int t = 0; t < n_traj; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    SpherePoint p = random_sphere_point(rng);
    for (int i = 1; i <= n_steps; ++i) {
      p = classical_kick_map(p, alpha, lambda);
      if (p.x < 0.0) out.push_back({t, i, p.y, p.z});
    }
  }
  return out;
}

/// Max over the first n steps of || <J>/j - p_classical ||, starting from a
/// spin coherent state centered at p0. Exact (to roundoff) at lambda=0.
inline double correspondence_check(const SpinSystem& s, const FloquetMap& map,
                                   const SpherePoint& p0, int n) {
  if (map.kind != MapKind::KickedTopTR)
    throw std::invalid_argument("correspondence_check: map must be a TR kicked top");
  const double alpha = map.params.at("alpha");
  const double lambda = map.params.at("lambda");
  const double theta = std::acos(std::clamp(p0.z, -1.0, 1.0));
  const double phi = std::atan2(p0.y, p0.x);
  Vector psi = spin_coherent_vector(s, theta, phi);
  SpherePoint p = p0;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    psi = map.u * psi;
    p = classical_kick_map(p, alpha, lambda);
    const double qx = std::real(psi.dot(s.jx * psi)) / s.j;
    const double qy = std::real(psi.dot(s.jy * psi)) / s.j;
    const double qz = std::real(psi.dot(s.jz * psi)) / s.j;
    const double dev =
        std::sqrt((qx - p.x) * (qx - p.x) + (qy - p.y) * (qy - p.y) + (qz - p.z) * (qz - p.z));
    worst = std::max(worst, dev);
  }
  return worst;
}

}  // namespace spintomo
