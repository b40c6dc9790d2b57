#pragma once

// Underlying undirected graph, combinatorial Laplacian, a cyclic Jacobi
// eigensolver for small dense symmetric matrices, and the variation bounds.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "digft/variation.hpp"

namespace digft {

/// Ascending eigenvalues with orthonormal eigenvectors in matching columns.
struct EigenBasis {
  RealVector eigenvalues;
  RealMatrix eigenvectors;
};

/// max{|A_ij|, |A_ji|}, using the complex modulus.
inline Graph underlying_undirected(const Graph& g) {
  const Index n = g.n();
  RealMatrix u(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) u(i, j) = std::max(std::abs(g.adj()(i, j)), std::abs(g.adj()(j, i)));
  return Graph(u.cast<Complex>(), WeightClass::Nonnegative, g.label());
}

/// L = D - A for a real symmetric nonnegative weight matrix. D_ii = sum_j A_ji.
inline RealMatrix laplacian(const RealMatrix& a) {
  RealMatrix l = -a;
  for (Index i = 0; i < a.rows(); ++i) l(i, i) += a.col(i).sum();
  return l;
}

inline RealMatrix laplacian(const Graph& g) {
  if (g.weight_class() != WeightClass::Nonnegative) throw ClassError("Laplacian needs a nonnegative graph");
  if (!g.is_symmetric()) throw ClassError("Laplacian needs a symmetric graph");
  return laplacian(g.real_adj());
}

/// Cyclic Jacobi rotations. Eigenvalues ascending; each eigenvector is signed
/// so its largest-magnitude component (lowest index on ties) is positive.
inline EigenBasis symmetric_eig(const RealMatrix& m, int max_sweeps = 100) {
  if (m.rows() != m.cols()) throw DimensionError("eigensolver needs a square matrix");
  const Index n = m.rows();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (std::abs(m(i, j) - m(j, i)) > 1e-10 * scale)
        throw NumericalError("eigensolver input is not symmetric");

  RealMatrix a = 0.5 * (m + m.transpose());
  RealMatrix v = RealMatrix::Identity(n, n);
  const double eps = std::numeric_limits<double>::epsilon();
  const double frob = std::max(a.norm(), std::numeric_limits<double>::min());

  bool converged = n < 2;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    double off = 0.0;
    for (Index p = 0; p < n; ++p)
      for (Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) <= eps * frob) {
      converged = true;
      break;
    }
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= eps * eps * frob) continue;
        // Rotation angle from theta = (a_qq - a_pp) / (2 a_pq), t = tan.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged) {
    double off = 0.0;
    for (Index p = 0; p < n; ++p)
      for (Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) > 1e3 * eps * frob)
      throw NumericalError("Jacobi eigensolver did not converge in " + std::to_string(max_sweeps) + " sweeps");
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) { return a(x, x) < a(y, y); });

  EigenBasis out{RealVector(n), RealMatrix(n, n)};
  for (Index k = 0; k < n; ++k) {
    const Index src = order[static_cast<std::size_t>(k)];
    out.eigenvalues(k) = a(src, src);
    RealVector col = v.col(src);
    Index arg = 0;
    for (Index r = 1; r < n; ++r)
      if (std::abs(col(r)) > std::abs(col(arg))) arg = r;
    if (col(arg) < 0.0) col = -col;
    out.eigenvectors.col(k) = col;
  }
  return out;
}

/// Largest Laplacian eigenvalue of the underlying undirected graph.
inline double dv_upper_bound(const Graph& g) {
  const Graph u = underlying_undirected(g);
  return symmetric_eig(laplacian(u)).eigenvalues(g.n() - 1);
}

/// Bound that holds for every unit vector: each ordered pair contributes at
/// most |w| (x_i - x_j)^2, so the Laplacian of |W| + |W|^T dominates. W is the
/// real weight matrix for IDV or the 2N embedding for CDV.
inline double variation_upper_bound(const Graph& g, VariationKind kind) {
  const RealMatrix w = kind == VariationKind::CDV ? embed_matrix(g.adj()) : g.real_adj();
  const RealMatrix sym = w.cwiseAbs() + w.cwiseAbs().transpose();
  return symmetric_eig(laplacian(sym)).eigenvalues(sym.rows() - 1);
}

}  // namespace digft
