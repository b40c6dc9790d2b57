#pragma once

// Test-only reference implementations. Nothing here calls into the library's
// evaluation paths, so they can be used to check them.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// IDV written literally from the definition, max/min clipping spelled out.
inline double idv(const RMat& a, const RVec& x) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const double ap = std::max(0.0, a(i, j));
      const double an = -std::min(0.0, a(i, j));
      const double dp = std::max(0.0, x(i) - x(j));
      const double dn = -std::min(0.0, x(i) - x(j));
      s += ap * dp * dp + an * dn * dn;
    }
  return s;
}

/// x^T L x with L = D - A built densely.
inline double quadratic_tv(const RMat& a, const RVec& x) {
  RMat l = -a;
  for (Eigen::Index i = 0; i < a.rows(); ++i) l(i, i) += a.col(i).sum();
  return x.dot(l * x);
}

/// Central differences of f at x with step h.
inline RVec central_diff(const std::function<double(const RVec&)>& f, RVec x, double h = 1e-6) {
  RVec g(x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double keep = x(k);
    x(k) = keep + h;
    const double up = f(x);
    x(k) = keep - h;
    const double down = f(x);
    x(k) = keep;
    g(k) = (up - down) / (2.0 * h);
  }
  return g;
}

/// True when no weighted pair difference lies within `margin` of a kink.
inline bool smooth_point(const RMat& a, const RVec& x, double margin) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0.0 && std::abs(x(i) - x(j)) < margin) return false;
  return true;
}

inline double relative_error(const RVec& got, const RVec& want) {
  return (got - want).norm() / std::max(want.norm(), 1e-12);
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
  int components() {
    int c = 0;
    for (int v = 0; v < static_cast<int>(parent.size()); ++v) c += find(v) == v;
    return c;
  }
};

/// Sum of squared gaps of (0, sorted freqs, top).
inline double dispersion_with_endpoints(std::vector<double> f, double top) {
  std::sort(f.begin(), f.end());
  double prev = 0.0, s = 0.0;
  for (double v : f) {
    s += (v - prev) * (v - prev);
    prev = v;
  }
  return s + (top - prev) * (top - prev);
}

/// Exhaustive search over sign vectors: minimum endpoint dispersion of the
/// frequencies {IDV(s_i v_i)} with s in {+1,-1}^N.
inline double best_sign_dispersion(const RMat& a, const RMat& eigvecs, double top) {
  const auto n = static_cast<int>(eigvecs.cols());
  std::vector<double> fp(n), fm(n);
  for (int i = 0; i < n; ++i) {
    fp[i] = idv(a, eigvecs.col(i));
    fm[i] = idv(a, -eigvecs.col(i));
  }
  double best = INFINITY;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i) f[i] = (mask >> i) & 1u ? fm[i] : fp[i];
    best = std::min(best, dispersion_with_endpoints(f, top));
  }
  return best;
}

}  // namespace oracle
