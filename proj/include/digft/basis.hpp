#pragma once

// GFT basis construction.
//
// Two builders share one objective, the spectral dispersion of the basis
// frequencies with the endpoints 0 and f_max included:
//
//   greedy   - picks one sign (IDV) or phase e^{i theta_k} (CDV) per
//              eigenvector of the underlying undirected Laplacian;
//   feasible - fixes a zero-variation DC column and a max-variation column,
//              then descends on the remaining columns while staying exactly
//              orthonormal via Cayley-transform updates with Barzilai-Borwein
//              steps and a nonmonotone backtracking line search.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "digft/random.hpp"
#include "digft/spectral.hpp"
#include "digft/variation.hpp"

namespace digft {

enum class BasisMethod { Greedy, Feasible };

inline std::string_view to_string(BasisMethod m) {
  return m == BasisMethod::Greedy ? "greedy" : "feasible";
}

struct DescentConfig {
  int restarts = 10;
  int max_iters = 5000;
  double initial_step = 1e-2;
  int nonmonotone_window = 10;
  double sufficient_decrease = 1e-4;
  double shrink = 0.5;
  double tol_rel_obj = 1e-8;
  double min_step = 1e-10;
  double max_step = 1e3;
  std::uint64_t seed = 0;
  /// Keep per-iteration objective values of every restart.
  bool record_trace = false;

  void validate() const {
    if (restarts < 1 || max_iters < 1 || nonmonotone_window < 1)
      throw InputError("restarts, max_iters and window must be positive");
    if (!(initial_step > 0.0) || !(sufficient_decrease > 0.0) || !(tol_rel_obj > 0.0))
      throw InputError("step, sufficient-decrease and tolerance must be positive");
    if (!(shrink > 0.0 && shrink < 1.0)) throw InputError("shrink must lie in (0, 1)");
    if (!(min_step > 0.0 && min_step <= max_step)) throw InputError("bad step clamp");
  }
};

struct GreedyConfig {
  /// Number of phases e^{2 pi i k / K} tried per eigenvector for CDV.
  int phase_grid = 16;

  void validate() const {
    if (phase_grid < 2) throw InputError("phase grid needs at least 2 points");
  }
};

/// Sum of squared gaps of (0, freqs..., f_max). freqs must be ascending.
inline double spectral_dispersion(std::span<const double> freqs, double f_max) {
  for (std::size_t k = 1; k < freqs.size(); ++k)
    if (freqs[k] < freqs[k - 1]) throw InputError("frequencies must be ascending");
  if (!freqs.empty() && f_max < freqs.back() - 1e-9)
    throw InputError("f_max is below the largest frequency");
  double prev = 0.0;
  double sum = 0.0;
  for (const double f : freqs) {
    sum += (f - prev) * (f - prev);
    prev = f;
  }
  return sum + (f_max - prev) * (f_max - prev);
}

/// Endpoint-free sum of squared consecutive gaps of ascending frequencies.
inline double consecutive_dispersion(std::span<const double> freqs) {
  double sum = 0.0;
  for (std::size_t k = 1; k < freqs.size(); ++k) sum += (freqs[k] - freqs[k - 1]) * (freqs[k] - freqs[k - 1]);
  return sum;
}

/// Column indices sorted by ascending frequency, ties by index.
inline std::vector<Index> frequency_order(const RealVector& freqs) {
  std::vector<Index> order(static_cast<std::size_t>(freqs.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return freqs(a) < freqs(b); });
  return order;
}

/// Dispersion of an unsorted frequency set; the upper endpoint is raised to
/// the largest frequency when one exceeds f_max.
inline double endpoint_dispersion(std::vector<double> freqs, double f_max) {
  std::sort(freqs.begin(), freqs.end());
  const double top = freqs.empty() ? f_max : std::max(f_max, freqs.back());
  return spectral_dispersion(freqs, top);
}

inline double endpoint_dispersion(const RealVector& freqs, double f_max) {
  return endpoint_dispersion(std::vector<double>(freqs.data(), freqs.data() + freqs.size()), f_max);
}

struct GftBasis {
  ComplexMatrix columns;
  RealVector frequencies;
  VariationKind kind = VariationKind::IDV;
  BasisMethod method = BasisMethod::Greedy;
  std::string graph_ref;
  /// Upper endpoint of the dispersion objective.
  double f_max = 0.0;

  Index size() const noexcept { return columns.cols(); }
  bool is_real() const { return columns.imag().isZero(0.0); }
  double max_frequency() const { return frequencies.size() ? frequencies.maxCoeff() : 0.0; }
  double dispersion() const { return endpoint_dispersion(frequencies, f_max); }
  double consecutive_dispersion() const {
    return digft::consecutive_dispersion(std::span<const double>(frequencies.data(), static_cast<std::size_t>(frequencies.size())));
  }
  /// max |(U^H U - I)_ij|
  double orthonormality_error() const {
    return (columns.adjoint() * columns - ComplexMatrix::Identity(size(), size())).cwiseAbs().maxCoeff();
  }
};

/// Reorders columns so frequencies ascend (stable, ties by column index).
inline void sort_by_frequency(GftBasis& b) {
  const auto order = frequency_order(b.frequencies);
  ComplexMatrix cols(b.columns.rows(), b.columns.cols());
  RealVector freqs(b.frequencies.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    cols.col(static_cast<Index>(k)) = b.columns.col(order[k]);
    freqs(static_cast<Index>(k)) = b.frequencies(order[k]);
  }
  b.columns = std::move(cols);
  b.frequencies = std::move(freqs);
}

/// {+1, -1} for IDV, the K-point phase grid for CDV.
inline std::vector<Complex> candidate_scalars(VariationKind kind, const GreedyConfig& cfg) {
  if (kind != VariationKind::CDV) return {Complex(1.0, 0.0), Complex(-1.0, 0.0)};
  std::vector<Complex> out;
  for (int k = 0; k < cfg.phase_grid; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / cfg.phase_grid;
    double c = std::cos(theta);
    double s = std::sin(theta);
    // Exact values on the axes keep the K=2 grid identical to the sign set.
    if (std::abs(c) < 1e-15) c = 0.0;
    if (std::abs(s) < 1e-15) s = 0.0;
    out.emplace_back(c, s);
  }
  return out;
}

/// Zero-variation unit vector: constant over every embedded coordinate.
/// Real 1/sqrt(N) for IDV; e^{i pi/4}/sqrt(N) for CDV, since the real constant
/// picks up CDV from negative imaginary weights.
inline ComplexVector dc_vector(VariationKind kind, Index n) {
  const double mag = 1.0 / std::sqrt(static_cast<double>(n));
  if (kind == VariationKind::CDV) return ComplexVector::Constant(n, std::polar(mag, std::numbers::pi / 4));
  return ComplexVector::Constant(n, Complex(mag, 0.0));
}

/// Eigenbasis of the Laplacian of the underlying undirected graph.
inline EigenBasis underlying_eigenbasis(const Graph& g) {
  return symmetric_eig(laplacian(underlying_undirected(g)));
}

inline GftBasis greedy_basis(const Graph& g, VariationKind kind, const GreedyConfig& cfg = {}) {
  cfg.validate();
  const VariationOperator op(g, kind);
  const EigenBasis eb = underlying_eigenbasis(g);
  const auto scalars = candidate_scalars(kind, cfg);
  const Index n = g.n();
  const std::size_t m = scalars.size();

  std::vector<std::vector<double>> cand(static_cast<std::size_t>(n), std::vector<double>(m));
  double f_max = 0.0;
  for (Index i = 0; i < n; ++i) {
    const ComplexVector v = eb.eigenvectors.col(i).cast<Complex>();
    for (std::size_t s = 0; s < m; ++s) {
      cand[i][s] = op.value(scalars[s] * v);
      f_max = std::max(f_max, cand[i][s]);
    }
  }

  // One pick per eigenvector, ascending eigenvalue order, each minimizing the
  // dispersion of the picks so far with endpoints (0, f_max).
  std::vector<double> picked;
  picked.reserve(static_cast<std::size_t>(n));
  GftBasis basis;
  basis.columns.resize(n, n);
  basis.frequencies.resize(n);
  for (Index i = 0; i < n; ++i) {
    std::size_t best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < m; ++s) {
      auto trial = picked;
      trial.push_back(cand[i][s]);
      const double d = endpoint_dispersion(std::move(trial), f_max);
      if (d < best_val) {
        best_val = d;
        best = s;
      }
    }
    picked.push_back(cand[i][best]);
    basis.columns.col(i) = scalars[best] * eb.eigenvectors.col(i).cast<Complex>();
    basis.frequencies(i) = cand[i][best];
  }
  basis.kind = kind;
  basis.method = BasisMethod::Greedy;
  basis.graph_ref = g.label();
  basis.f_max = f_max;
  sort_by_frequency(basis);
  return basis;
}

namespace detail {

/// Tracks the best objective and stops once it has not improved by more than
/// tol * |best| for `window` consecutive iterations.
class StallDetector {
 public:
  StallDetector(double tol, int window) : tol_(tol), window_(window) {}

  /// Returns true when the search should stop.
  bool update(double value, bool minimize) {
    const double better = minimize ? best_ - value : value - best_;
    if (!seen_ || better > tol_ * std::max(1.0, std::abs(best_))) {
      best_ = seen_ ? (minimize ? std::min(best_, value) : std::max(best_, value)) : value;
      seen_ = true;
      stalled_ = 0;
      return false;
    }
    if (minimize ? value < best_ : value > best_) best_ = value;
    return ++stalled_ >= window_;
  }

 private:
  double tol_;
  int window_;
  double best_ = 0.0;
  bool seen_ = false;
  int stalled_ = 0;
};

/// Orthonormal vectors spanning the DC direction in the real space of `op`:
/// one vector for IDV, two (DC and i*DC) for CDV.
inline RealMatrix dc_constraints(const VariationOperator& op) {
  const ComplexVector dc = dc_vector(op.kind(), op.n());
  if (!op.is_complex()) return op.to_real(dc);
  RealMatrix c(op.real_dim(), 2);
  c.col(0) = op.to_real(dc);
  c.col(1) = op.to_real(Complex(0.0, 1.0) * dc);
  return c;
}

struct AscentResult {
  RealVector x;
  double value;
  bool exhausted;
};

/// Projected gradient ascent of the variation on the unit sphere of the
/// complement of span(constraints), BB steps with nonmonotone backtracking.
inline AscentResult ascend(const VariationOperator& op, const RealMatrix& constraints, RealVector x,
                           const DescentConfig& cfg) {
  auto project = [&](RealVector v) {
    v -= constraints * (constraints.transpose() * v);
    return v;
  };
  x = project(std::move(x));
  const double nx = x.norm();
  if (nx < 1e-12) return {x, op.value_real(x), false};
  x /= nx;

  double f = op.value_real(x);
  AscentResult best{x, f, false};
  auto riemannian = [&](const RealVector& at) {
    RealVector g = project(op.gradient_real(at));
    g -= at.dot(g) * at;
    return g;
  };
  RealVector rg = riemannian(x);
  std::deque<double> history{f};
  StallDetector stall(cfg.tol_rel_obj, cfg.nonmonotone_window);
  stall.update(f, false);
  double tau = cfg.initial_step;
  bool exhausted = true;
  for (int it = 0; it < cfg.max_iters; ++it) {
    const double gn2 = rg.squaredNorm();
    if (gn2 <= 1e-28 * std::max(1.0, f * f)) {
      exhausted = false;
      break;
    }
    const double ref = *std::min_element(history.begin(), history.end());
    RealVector xn;
    double fn = 0.0;
    bool accepted = false;
    while (tau >= cfg.min_step) {
      xn = project(x + tau * rg);
      xn /= xn.norm();
      fn = op.value_real(xn);
      if (fn >= ref + cfg.sufficient_decrease * tau * gn2) {
        accepted = true;
        break;
      }
      tau *= cfg.shrink;
    }
    if (!accepted) {
      exhausted = false;
      break;
    }
    const RealVector rgn = riemannian(xn);
    const RealVector s = xn - x;
    const RealVector y = rg - rgn;  // gradient change of the minimized -f
    const double sy = std::abs(s.dot(y));
    if (sy > 0.0)
      tau = (it % 2 == 0) ? s.squaredNorm() / sy : sy / std::max(y.squaredNorm(), 1e-300);
    else
      tau = cfg.max_step;
    tau = std::clamp(tau, cfg.min_step, cfg.max_step);

    x = xn;
    f = fn;
    rg = rgn;
    if (f > best.value) best = {x, f, false};
    history.push_back(f);
    if (static_cast<int>(history.size()) > cfg.nonmonotone_window) history.pop_front();
    if (stall.update(f, false)) {
      exhausted = false;
      break;
    }
  }
  best.exhausted = exhausted;
  return best;
}

}  // namespace detail

struct MaxFrequencyResult {
  ComplexVector u;
  double f_max = 0.0;
};

/// Largest variation found on the unit sphere orthogonal to the DC vector.
/// Starts: the `restarts` best sign/phase-rotated eigenvectors of the
/// underlying Laplacian, plus `restarts` random unit vectors.
inline MaxFrequencyResult max_frequency_vector(const Graph& g, VariationKind kind, const DescentConfig& cfg,
                                               const GreedyConfig& gcfg = {}) {
  cfg.validate();
  gcfg.validate();
  const VariationOperator op(g, kind);
  const RealMatrix constraints = detail::dc_constraints(op);
  const Index n = g.n();
  const Index dim = op.real_dim();

  if (dim - constraints.cols() <= 0) return {dc_vector(kind, n), 0.0};

  struct Start {
    RealVector x;
    double value;
  };
  std::vector<Start> warm;
  const EigenBasis eb = underlying_eigenbasis(g);
  for (Index i = 0; i < n; ++i) {
    for (const Complex s : candidate_scalars(kind, gcfg)) {
      RealVector x = op.to_real(s * eb.eigenvectors.col(i).cast<Complex>());
      x -= constraints * (constraints.transpose() * x);
      const double nx = x.norm();
      if (nx < 1e-8) continue;
      x /= nx;
      warm.push_back({x, op.value_real(x)});
    }
  }
  std::stable_sort(warm.begin(), warm.end(), [](const Start& a, const Start& b) { return a.value > b.value; });
  if (static_cast<int>(warm.size()) > cfg.restarts) warm.resize(static_cast<std::size_t>(cfg.restarts));

  std::vector<RealVector> starts;
  for (const auto& w : warm) starts.push_back(w.x);
  Rng rng(derive_seed(cfg.seed, 0x6d6178, 0));
  for (int r = 0; r < cfg.restarts; ++r) starts.push_back(random_unit_vector(rng, dim));

  detail::AscentResult best{RealVector(), -1.0, false};
  for (const auto& s : starts) {
    auto res = detail::ascend(op, constraints, s, cfg);
    if (res.x.size() == dim && res.x.norm() > 0.5 && res.value > best.value) best = std::move(res);
  }
  ComplexVector u = op.from_real(best.x);
  u /= u.norm();
  return {u, op.value(u)};
}

/// Cayley update (I + tau/2 W)^{-1} (I - tau/2 W) X for skew-Hermitian W.
inline ComplexMatrix cayley_update(const ComplexMatrix& x, const ComplexMatrix& w, double tau) {
  if (tau == 0.0) return x;
  const Index n = w.rows();
  const bool real = w.imag().isZero(0.0) && x.imag().isZero(0.0);
  for (int attempt = 0; attempt < 60; ++attempt) {
    ComplexMatrix out;
    if (real) {
      const RealMatrix wr = w.real();
      const RealMatrix id = RealMatrix::Identity(n, n);
      const RealMatrix lhs = id + (0.5 * tau) * wr;
      out = lhs.partialPivLu().solve((id - (0.5 * tau) * wr) * x.real()).cast<Complex>();
    } else {
      const ComplexMatrix id = ComplexMatrix::Identity(n, n);
      const ComplexMatrix lhs = id + (0.5 * tau) * w;
      out = lhs.partialPivLu().solve((id - (0.5 * tau) * w) * x);
    }
    // I + (tau/2) W is nonsingular for exactly skew W; guard against round-off anyway.
    if (out.allFinite()) return out;
    tau *= 0.5;
  }
  throw NumericalError("Cayley system stayed singular after step shrinking");
}

/// One feasible step: W = G U^H - U G^H, then the Cayley update. Keeps U^H U = I.
inline ComplexMatrix stiefel_step(const ComplexMatrix& u, const ComplexMatrix& g, double tau) {
  if (u.rows() != g.rows() || u.cols() != g.cols()) throw DimensionError("U and G shapes differ");
  const ComplexMatrix w = g * u.adjoint() - u * g.adjoint();
  return cayley_update(u, w, tau);
}

/// Gradient of the endpoint dispersion of all column frequencies of U, with
/// the sorted order held fixed. `order` lists column indices by ascending
/// frequency; columns listed in `fixed` get a zero gradient.
inline ComplexMatrix dispersion_gradient(const VariationOperator& op, const ComplexMatrix& u,
                                         const RealVector& freqs, std::span<const Index> order, double f_max,
                                         std::span<const Index> fixed = {}) {
  const Index n = u.cols();
  if (static_cast<Index>(order.size()) != n || freqs.size() != n)
    throw DimensionError("order/frequency length differs from column count");
  const double top = std::max(f_max, freqs.size() ? freqs.maxCoeff() : 0.0);
  ComplexMatrix grad = ComplexMatrix::Zero(u.rows(), n);
  for (Index p = 0; p < n; ++p) {
    const Index col = order[static_cast<std::size_t>(p)];
    if (std::find(fixed.begin(), fixed.end(), col) != fixed.end()) continue;
    const double prev = p == 0 ? 0.0 : freqs(order[static_cast<std::size_t>(p - 1)]);
    const double next = p == n - 1 ? top : freqs(order[static_cast<std::size_t>(p + 1)]);
    const double coeff = 2.0 * (2.0 * freqs(col) - prev - next);
    if (coeff != 0.0) grad.col(col) = coeff * op.gradient(u.col(col));
  }
  return grad;
}

inline ComplexMatrix dispersion_gradient(const Graph& g, VariationKind kind, const ComplexMatrix& u,
                                         std::span<const Index> order, double f_max,
                                         std::span<const Index> fixed = {}) {
  const VariationOperator op(g, kind);
  RealVector freqs(u.cols());
  for (Index k = 0; k < u.cols(); ++k) freqs(k) = op.value(u.col(k));
  return dispersion_gradient(op, u, freqs, order, f_max, fixed);
}

struct FeasibleResult {
  GftBasis basis;
  MaxFrequencyResult max_vector;
  /// True when the returned restart hit max_iters without meeting the tolerance.
  bool iterations_exhausted = false;
  int best_restart = 0;
  /// Objective at the start of restart 0 (the projected greedy basis).
  double warm_start_dispersion = 0.0;
  double final_dispersion = 0.0;
  std::vector<double> restart_start;
  std::vector<double> restart_final;
  std::vector<std::vector<double>> traces;
};

namespace detail {

/// Free block of a feasible basis: U = [dc, Q X, u_max] with Q an orthonormal
/// basis of the complement of span{dc, u_max} and X square unitary.
class FreeBlockProblem {
 public:
  FreeBlockProblem(const VariationOperator& op, ComplexVector dc, ComplexVector u_max, double f_max)
      : op_(op), dc_(std::move(dc)), u_max_(std::move(u_max)), f_max_(f_max) {
    const Index n = op.n();
    ComplexMatrix fixed(n, 2);
    fixed.col(0) = dc_;
    fixed.col(1) = u_max_;
    if (op.is_complex()) {
      Eigen::HouseholderQR<ComplexMatrix> qr(fixed);
      const ComplexMatrix full = qr.householderQ() * ComplexMatrix::Identity(n, n);
      q_ = full.rightCols(n - 2);
    } else {
      Eigen::HouseholderQR<RealMatrix> qr(fixed.real());
      const RealMatrix full = qr.householderQ() * RealMatrix::Identity(n, n);
      q_ = full.rightCols(n - 2).cast<Complex>();
    }
  }

  Index free_dim() const { return q_.cols(); }
  const ComplexMatrix& complement() const { return q_; }

  ComplexMatrix assemble(const ComplexMatrix& x) const {
    const Index n = op_.n();
    ComplexMatrix u(n, n);
    u.col(0) = dc_;
    u.middleCols(1, n - 2) = q_ * x;
    u.col(n - 1) = u_max_;
    return u;
  }

  RealVector frequencies(const ComplexMatrix& u) const {
    RealVector f(u.cols());
    f(0) = op_.value(u.col(0));
    for (Index k = 1; k + 1 < u.cols(); ++k) f(k) = op_.value(u.col(k));
    f(u.cols() - 1) = f_max_;
    return f;
  }

  double objective(const RealVector& freqs) const { return endpoint_dispersion(freqs, f_max_); }

  /// Euclidean gradient with respect to X.
  ComplexMatrix gradient(const ComplexMatrix& u, const RealVector& freqs) const {
    const auto order = frequency_order(freqs);
    const Index fixed[] = {0, u.cols() - 1};
    const ComplexMatrix g = dispersion_gradient(op_, u, freqs, order, f_max_, fixed);
    return q_.adjoint() * g.middleCols(1, u.cols() - 2);
  }

 private:
  const VariationOperator& op_;
  ComplexVector dc_;
  ComplexVector u_max_;
  double f_max_;
  ComplexMatrix q_;
};

struct DescentOutcome {
  ComplexMatrix x;
  double start;
  double value;
  bool exhausted;
  std::vector<double> trace;
};

inline DescentOutcome descend(const FreeBlockProblem& prob, ComplexMatrix x, const DescentConfig& cfg) {
  ComplexMatrix u = prob.assemble(x);
  RealVector freqs = prob.frequencies(u);
  double f = prob.objective(freqs);
  DescentOutcome out{x, f, f, true, {}};
  if (cfg.record_trace) out.trace.push_back(f);

  ComplexMatrix g = prob.gradient(u, freqs);
  ComplexMatrix w = g * x.adjoint() - x * g.adjoint();
  std::deque<double> history{f};
  StallDetector stall(cfg.tol_rel_obj, cfg.nonmonotone_window);
  stall.update(f, true);
  double tau = cfg.initial_step;
  for (int it = 0; it < cfg.max_iters; ++it) {
    // F'(0) along the Cayley curve is -||W||^2 / 2.
    const double wn2 = w.squaredNorm();
    if (wn2 <= 1e-28 * std::max(1.0, f * f)) {
      out.exhausted = false;
      break;
    }
    const double slope = -0.5 * wn2;
    const double ref = *std::max_element(history.begin(), history.end());
    ComplexMatrix xn;
    RealVector fr;
    double fn = 0.0;
    bool accepted = false;
    while (tau >= cfg.min_step) {
      xn = cayley_update(x, w, tau);
      u = prob.assemble(xn);
      fr = prob.frequencies(u);
      fn = prob.objective(fr);
      if (fn <= ref + cfg.sufficient_decrease * tau * slope) {
        accepted = true;
        break;
      }
      tau *= cfg.shrink;
    }
    if (!accepted) {
      out.exhausted = false;
      break;
    }
    const ComplexMatrix gn = prob.gradient(u, fr);
    const ComplexMatrix wn = gn * xn.adjoint() - xn * gn.adjoint();
    // BB on the Riemannian gradients W X.
    const ComplexMatrix s = xn - x;
    const ComplexMatrix y = wn * xn - w * x;
    const double sy = std::abs((s.adjoint() * y).trace().real());
    if (sy > 0.0)
      tau = (it % 2 == 0) ? s.squaredNorm() / sy : sy / std::max(y.squaredNorm(), 1e-300);
    else
      tau = cfg.max_step;
    tau = std::clamp(tau, cfg.min_step, cfg.max_step);

    x = std::move(xn);
    f = fn;
    w = wn;
    if (cfg.record_trace) out.trace.push_back(f);
    if (f < out.value) {
      out.value = f;
      out.x = x;
    }
    history.push_back(f);
    if (static_cast<int>(history.size()) > cfg.nonmonotone_window) history.pop_front();
    if (stall.update(f, true)) {
      out.exhausted = false;
      break;
    }
  }
  return out;
}

/// Closest unitary matrix (polar factor) in Frobenius norm.
inline ComplexMatrix polar_unitary(const ComplexMatrix& b) {
  Eigen::JacobiSVD<ComplexMatrix> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace detail

/// Feasible-method basis. Column layout during descent: DC vector first,
/// max-frequency vector last; the returned basis is sorted by frequency.
inline FeasibleResult feasible_basis(const Graph& g, VariationKind kind, const DescentConfig& cfg,
                                     const GreedyConfig& gcfg = {}) {
  cfg.validate();
  gcfg.validate();
  const Index n = g.n();
  if (n < 3) throw DimensionError("feasible method needs at least 3 vertices");
  const VariationOperator op(g, kind);

  FeasibleResult result;
  result.max_vector = max_frequency_vector(g, kind, cfg, gcfg);
  const double f_max = result.max_vector.f_max;
  const ComplexVector dc = dc_vector(kind, n);
  const detail::FreeBlockProblem prob(op, dc, result.max_vector.u, f_max);
  const Index m = prob.free_dim();

  // Restart 0 starts from the greedy basis: drop the columns closest to the
  // fixed DC and max vectors, then take the nearest unitary free block.
  const GftBasis greedy = greedy_basis(g, kind, gcfg);
  std::vector<Index> keep(static_cast<std::size_t>(n));
  std::iota(keep.begin(), keep.end(), Index{0});
  const ComplexVector& u_max = result.max_vector.u;
  for (const ComplexVector* fixed : {&dc, &u_max}) {
    auto it = std::max_element(keep.begin(), keep.end(), [&](Index a, Index b) {
      return std::abs(fixed->dot(greedy.columns.col(a))) < std::abs(fixed->dot(greedy.columns.col(b)));
    });
    keep.erase(it);
  }
  ComplexMatrix selected(n, m);
  for (Index k = 0; k < m; ++k) selected.col(k) = greedy.columns.col(keep[static_cast<std::size_t>(k)]);

  Rng rng(derive_seed(cfg.seed, 0x66656173, 0));
  detail::DescentOutcome best;
  bool have_best = false;
  for (int r = 0; r < cfg.restarts; ++r) {
    ComplexMatrix x0 = r == 0 ? detail::polar_unitary(prob.complement().adjoint() * selected)
                              : random_unitary(rng, m, op.is_complex());
    if (!op.is_complex()) x0 = x0.real().cast<Complex>();
    auto res = detail::descend(prob, std::move(x0), cfg);
    result.restart_start.push_back(res.start);
    result.restart_final.push_back(res.value);
    if (r == 0) result.warm_start_dispersion = res.start;
    if (!have_best || res.value < best.value) {
      result.best_restart = r;
      best = res;
      have_best = true;
    }
    if (cfg.record_trace) result.traces.push_back(std::move(res.trace));
  }

  GftBasis& basis = result.basis;
  basis.columns = prob.assemble(best.x);
  basis.frequencies = prob.frequencies(basis.columns);
  basis.kind = kind;
  basis.method = BasisMethod::Feasible;
  basis.graph_ref = g.label();
  basis.f_max = f_max;
  sort_by_frequency(basis);
  result.final_dispersion = best.value;
  result.iterations_exhausted = best.exhausted;
  return result;
}

}  // namespace digft
