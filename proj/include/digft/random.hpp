#pragma once

// Seed derivation and random draws on spheres / unitary groups.
//
// Per-instance seeds come from a counter-based mix of (master, stream, index),
// so any instance can be regenerated in isolation and results do not depend on
// evaluation order.

#include <cstdint>
#include <random>

#include "digft/core.hpp"

namespace digft {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// seed = splitmix64(splitmix64(splitmix64(master) ^ stream) ^ index)
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(master) ^ stream) ^ index);
}

using Rng = std::mt19937_64;

inline RealVector random_unit_vector(Rng& rng, Index n) {
  std::normal_distribution<double> normal;
  RealVector v(n);
  do {
    for (Index k = 0; k < n; ++k) v(k) = normal(rng);
  } while (v.norm() == 0.0);
  return v / v.norm();
}

/// Haar-distributed orthogonal (real) or unitary (complex) n x n matrix,
/// stored as complex.
inline ComplexMatrix random_unitary(Rng& rng, Index n, bool complex) {
  std::normal_distribution<double> normal;
  ComplexMatrix z(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) z(i, j) = Complex(normal(rng), complex ? normal(rng) : 0.0);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  if (!complex) q = q.real().cast<Complex>();
  return q;
}

}  // namespace digft
