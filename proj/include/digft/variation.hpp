#pragma once

// Signal variation on directed graphs: TV, DV, the indefinite extension (IDV)
// and the complex extension (CDV) via the 2N real embedding, plus analytic
// gradients of IDV and CDV with respect to a single vector.

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "digft/graph.hpp"

namespace digft {

enum class VariationKind { TV, DV, IDV, CDV };

inline std::string_view to_string(VariationKind k) {
  switch (k) {
    case VariationKind::TV: return "tv";
    case VariationKind::DV: return "dv";
    case VariationKind::IDV: return "idv";
    case VariationKind::CDV: return "cdv";
  }
  return "?";
}

inline double pos_part(double s) { return s > 0.0 ? s : 0.0; }
inline double neg_part(double s) { return s < 0.0 ? -s : 0.0; }

/// 2N x 2N real matrix [[Re A, -Im A], [Im A, Re A]].
struct RealEmbedding {
  RealMatrix a_tilde;
};

inline RealMatrix embed_matrix(const ComplexMatrix& a) {
  const Index n = a.rows();
  RealMatrix out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = a.real();
  out.topRightCorner(n, n) = -a.imag();
  out.bottomLeftCorner(n, n) = a.imag();
  out.bottomRightCorner(n, n) = a.real();
  return out;
}

inline RealEmbedding complex_embed(const Graph& g) { return {embed_matrix(g.adj())}; }

/// [Re x; Im x]
inline RealVector embed_signal(const ComplexVector& x) {
  const Index n = x.size();
  RealVector out(2 * n);
  out.head(n) = x.real();
  out.tail(n) = x.imag();
  return out;
}

inline RealVector embed_signal(const GraphSignal& x) { return embed_signal(x.values()); }

inline ComplexVector unembed_signal(const RealVector& v) {
  const Index n = v.size() / 2;
  ComplexVector out(n);
  for (Index k = 0; k < n; ++k) out(k) = Complex(v(k), v(n + k));
  return out;
}

/// Sparse view of a real weight matrix for repeated IDV evaluation.
///
/// Each stored edge (i, j, w) contributes [w]_+ [x_i - x_j]_+^2 + [w]_- [x_i - x_j]_-^2.
class IdvKernel {
 public:
  struct Edge {
    Index src;
    Index dst;
    double weight;
  };

  IdvKernel() = default;
  explicit IdvKernel(const RealMatrix& a) : dim_(a.rows()) {
    for (Index j = 0; j < a.cols(); ++j)
      for (Index i = 0; i < a.rows(); ++i)
        if (a(i, j) != 0.0) edges_.push_back({i, j, a(i, j)});
  }

  Index dim() const noexcept { return dim_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  template <typename Vec>
  double value(const Vec& x) const {
    double sum = 0.0;
    for (const Edge& e : edges_) {
      const double d = x(e.src) - x(e.dst);
      sum += e.weight > 0.0 ? e.weight * pos_part(d) * pos_part(d)
                            : -e.weight * neg_part(d) * neg_part(d);
    }
    return sum;
  }

  template <typename Vec>
  RealVector gradient(const Vec& x) const {
    RealVector g = RealVector::Zero(dim_);
    for (const Edge& e : edges_) {
      const double d = x(e.src) - x(e.dst);
      // d/dd of the edge term; the term depends on x only through d.
      const double slope = e.weight > 0.0 ? 2.0 * e.weight * pos_part(d) : 2.0 * e.weight * neg_part(d);
      g(e.src) += slope;
      g(e.dst) -= slope;
    }
    return g;
  }

 private:
  Index dim_ = 0;
  std::vector<Edge> edges_;
};

namespace detail {

inline void require_real_signal(const GraphSignal& x, std::string_view what) {
  if (!x.is_real()) throw ClassError(std::string(what) + " needs a real signal");
}

inline void require_size(const Graph& g, Index size) {
  if (size != g.n())
    throw DimensionError("signal has length " + std::to_string(size) + ", graph has " +
                         std::to_string(g.n()) + " vertices");
}

}  // namespace detail

/// sum_{i<j} A_ij (x_i - x_j)^2 on a symmetric nonnegative graph.
inline double total_variation(const Graph& g, const GraphSignal& x) {
  detail::require_size(g, x.size());
  if (g.weight_class() != WeightClass::Nonnegative) throw ClassError("TV needs a nonnegative graph");
  if (!g.is_symmetric()) throw ClassError("TV needs a symmetric graph");
  detail::require_real_signal(x, "TV");
  const RealMatrix a = g.real_adj();
  const RealVector v = x.real_values();
  double sum = 0.0;
  for (Index i = 0; i < g.n(); ++i)
    for (Index j = i + 1; j < g.n(); ++j) {
      const double d = v(i) - v(j);
      sum += a(i, j) * d * d;
    }
  return sum;
}

/// sum_ij A_ij [x_i - x_j]_+^2 on a nonnegative graph.
inline double directed_variation(const Graph& g, const GraphSignal& x) {
  detail::require_size(g, x.size());
  if (g.weight_class() != WeightClass::Nonnegative) throw ClassError("DV needs a nonnegative graph");
  detail::require_real_signal(x, "DV");
  const RealMatrix a = g.real_adj();
  const RealVector v = x.real_values();
  double sum = 0.0;
  for (Index i = 0; i < g.n(); ++i)
    for (Index j = 0; j < g.n(); ++j) {
      const double d = pos_part(v(i) - v(j));
      sum += a(i, j) * d * d;
    }
  return sum;
}

/// IDV of a real weight matrix and real vector (any dimension).
template <typename Vec>
double indefinite_dv(const RealMatrix& a, const Vec& x) {
  double sum = 0.0;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) {
      const double w = a(i, j);
      if (w == 0.0) continue;
      const double d = x(i) - x(j);
      sum += pos_part(w) * pos_part(d) * pos_part(d) + neg_part(w) * neg_part(d) * neg_part(d);
    }
  return sum;
}

inline double indefinite_dv(const Graph& g, const GraphSignal& x) {
  detail::require_size(g, x.size());
  if (!g.is_real()) throw ClassError("IDV needs real weights; use CDV for complex graphs");
  detail::require_real_signal(x, "IDV");
  return indefinite_dv(g.real_adj(), x.real_values());
}

/// IDV of the real embedding of (A, x).
inline double complex_dv(const Graph& g, const GraphSignal& x) {
  detail::require_size(g, x.size());
  return indefinite_dv(embed_matrix(g.adj()), embed_signal(x));
}

/// The same quantity as complex_dv written out over the N x N blocks.
inline double complex_dv_expanded(const Graph& g, const GraphSignal& x) {
  detail::require_size(g, x.size());
  const ComplexMatrix& a = g.adj();
  const ComplexVector& v = x.values();
  auto sq = [](double s) { return s * s; };
  double sum = 0.0;
  for (Index i = 0; i < g.n(); ++i) {
    for (Index j = 0; j < g.n(); ++j) {
      const double re_a = a(i, j).real();
      const double im_a = a(i, j).imag();
      const double d_re = v(i).real() - v(j).real();
      const double d_im = v(i).imag() - v(j).imag();
      const double cross_ri = v(i).real() - v(j).imag();
      const double cross_ir = v(i).imag() - v(j).real();
      sum += pos_part(re_a) * sq(pos_part(d_re)) + neg_part(re_a) * sq(neg_part(d_re));
      sum += pos_part(re_a) * sq(pos_part(d_im)) + neg_part(re_a) * sq(neg_part(d_im));
      sum += neg_part(im_a) * sq(pos_part(cross_ri)) + pos_part(im_a) * sq(neg_part(cross_ri));
      sum += pos_part(im_a) * sq(pos_part(cross_ir)) + neg_part(im_a) * sq(neg_part(cross_ir));
    }
  }
  return sum;
}

inline double variation(VariationKind kind, const Graph& g, const GraphSignal& x) {
  switch (kind) {
    case VariationKind::TV: return total_variation(g, x);
    case VariationKind::DV: return directed_variation(g, x);
    case VariationKind::IDV: return indefinite_dv(g, x);
    case VariationKind::CDV: return complex_dv(g, x);
  }
  throw ClassError("unknown variation kind");
}

/// Gradient of IDV at u. Incoming edges (column i) and outgoing edges (row i)
/// enter with opposite signs; no symmetrization is applied.
inline RealVector idv_gradient(const RealMatrix& a, const RealVector& u) {
  const Index n = a.rows();
  RealVector g = RealVector::Zero(n);
  for (Index i = 0; i < n; ++i) {
    double acc = 0.0;
    for (Index j = 0; j < n; ++j) {
      const double in_w = a(j, i);   // edge j -> i, difference u_j - u_i
      const double out_w = a(i, j);  // edge i -> j, difference u_i - u_j
      const double d_in = u(j) - u(i);
      const double d_out = u(i) - u(j);
      acc += -pos_part(in_w) * pos_part(d_in) + pos_part(out_w) * pos_part(d_out) +
             neg_part(in_w) * neg_part(d_in) - neg_part(out_w) * neg_part(d_out);
    }
    g(i) = 2.0 * acc;
  }
  return g;
}

inline RealVector idv_gradient(const Graph& g, const RealVector& u) {
  detail::require_size(g, u.size());
  if (!g.is_real()) throw ClassError("IDV gradient needs real weights");
  return idv_gradient(g.real_adj(), u);
}

/// Gradient of CDV packed as d/dRe + i d/dIm.
inline ComplexVector cdv_gradient(const Graph& g, const ComplexVector& u) {
  detail::require_size(g, u.size());
  return unembed_signal(idv_gradient(embed_matrix(g.adj()), embed_signal(u)));
}

/// Repeated evaluation of IDV or CDV on one graph, on complex-stored vectors.
///
/// IDV reads only the real part of its argument and returns a real gradient.
class VariationOperator {
 public:
  VariationOperator(const Graph& g, VariationKind kind) : kind_(kind), n_(g.n()) {
    switch (kind) {
      case VariationKind::IDV:
        if (!g.is_real()) throw ClassError("IDV needs real weights; use CDV for complex graphs");
        kernel_ = IdvKernel(g.real_adj());
        break;
      case VariationKind::CDV:
        kernel_ = IdvKernel(embed_matrix(g.adj()));
        break;
      default:
        throw ClassError("basis construction supports IDV and CDV only");
    }
  }

  VariationKind kind() const noexcept { return kind_; }
  bool is_complex() const noexcept { return kind_ == VariationKind::CDV; }
  Index n() const noexcept { return n_; }
  /// Dimension of the real space the measure lives on (N or 2N).
  Index real_dim() const noexcept { return kernel_.dim(); }
  const IdvKernel& kernel() const noexcept { return kernel_; }

  double value(const ComplexVector& u) const {
    return is_complex() ? kernel_.value(embed_signal(u)) : kernel_.value(u.real());
  }

  ComplexVector gradient(const ComplexVector& u) const {
    if (is_complex()) return unembed_signal(kernel_.gradient(embed_signal(u)));
    return kernel_.gradient(u.real()).cast<Complex>();
  }

  /// Real-space versions, x of length real_dim().
  double value_real(const RealVector& x) const { return kernel_.value(x); }
  RealVector gradient_real(const RealVector& x) const { return kernel_.gradient(x); }

  RealVector to_real(const ComplexVector& u) const {
    return is_complex() ? embed_signal(u) : RealVector(u.real());
  }
  ComplexVector from_real(const RealVector& x) const {
    return is_complex() ? unembed_signal(x) : ComplexVector(x.cast<Complex>());
  }

 private:
  VariationKind kind_;
  Index n_;
  IdvKernel kernel_;
};

}  // namespace digft
