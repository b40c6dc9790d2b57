#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "digft/core.hpp"

namespace digft {

/// Narrowest scalar class that contains every edge weight.
enum class WeightClass { Nonnegative, Indefinite, Complex };

inline std::string_view to_string(WeightClass c) {
  switch (c) {
    case WeightClass::Nonnegative: return "nonnegative";
    case WeightClass::Indefinite: return "indefinite";
    case WeightClass::Complex: return "complex";
  }
  return "?";
}

/// True when every value of class `inner` is also a value of class `outer`.
inline bool class_contains(WeightClass outer, WeightClass inner) {
  return static_cast<int>(outer) >= static_cast<int>(inner);
}

inline WeightClass infer_weight_class(const ComplexMatrix& adj) {
  WeightClass c = WeightClass::Nonnegative;
  for (Index j = 0; j < adj.cols(); ++j) {
    for (Index i = 0; i < adj.rows(); ++i) {
      const Complex w = adj(i, j);
      if (w.imag() != 0.0) return WeightClass::Complex;
      if (w.real() < 0.0) c = WeightClass::Indefinite;
    }
  }
  return c;
}

/// Directed graph on n vertices with a dense complex-capable adjacency matrix.
///
/// Row i holds the edges leaving vertex i, so adj(i, j) is the weight of i -> j.
/// Immutable after construction; the constructor enforces squareness, n >= 1,
/// finite weights, a zero diagonal and consistency with the weight class.
class Graph {
 public:
  /// Infers the narrowest weight class.
  explicit Graph(ComplexMatrix adj, std::string label = {})
      : Graph(adj, infer_weight_class(adj), std::move(label)) {}

  /// Declares a weight class; it may be wider than the data but never narrower.
  Graph(ComplexMatrix adj, WeightClass declared, std::string label = {})
      : adj_(std::move(adj)), class_(declared), label_(std::move(label)) {
    if (adj_.rows() != adj_.cols())
      throw DimensionError("adjacency matrix is " + std::to_string(adj_.rows()) + "x" +
                           std::to_string(adj_.cols()) + ", expected square");
    if (adj_.rows() < 1) throw DimensionError("graph needs at least one vertex");
    for (Index i = 0; i < adj_.rows(); ++i) {
      if (adj_(i, i) != Complex(0.0, 0.0)) throw SelfLoopError(i);
    }
    if (!adj_.allFinite()) throw InputError("adjacency matrix has non-finite entries");
    const WeightClass actual = infer_weight_class(adj_);
    if (!class_contains(class_, actual))
      throw ClassError("weights are " + std::string(to_string(actual)) + " but graph declared " +
                       std::string(to_string(class_)));
  }

  static Graph from_real(const RealMatrix& adj, std::string label = {}) {
    return Graph(adj.cast<Complex>(), std::move(label));
  }

  Index n() const noexcept { return adj_.rows(); }
  const ComplexMatrix& adj() const noexcept { return adj_; }
  WeightClass weight_class() const noexcept { return class_; }
  const std::string& label() const noexcept { return label_; }

  bool is_real() const noexcept { return class_ != WeightClass::Complex; }

  /// Real part of the adjacency; throws ClassError for complex graphs.
  RealMatrix real_adj() const {
    if (!is_real()) throw ClassError("graph has complex weights");
    return adj_.real();
  }

  bool is_symmetric(double tol = 0.0) const {
    for (Index i = 0; i < n(); ++i)
      for (Index j = i + 1; j < n(); ++j)
        if (std::abs(adj_(i, j) - adj_(j, i)) > tol) return false;
    return true;
  }

  std::size_t edge_count() const {
    std::size_t count = 0;
    for (Index j = 0; j < n(); ++j)
      for (Index i = 0; i < n(); ++i)
        if (adj_(i, j) != Complex(0.0, 0.0)) ++count;
    return count;
  }

 private:
  ComplexMatrix adj_;
  WeightClass class_;
  std::string label_;
};

enum class ValueClass { Real, Complex };

/// Vertex-indexed signal; real signals are stored with zero imaginary parts.
class GraphSignal {
 public:
  explicit GraphSignal(ComplexVector values) : values_(std::move(values)) {
    class_ = values_.imag().isZero(0.0) ? ValueClass::Real : ValueClass::Complex;
  }
  explicit GraphSignal(const RealVector& values)
      : values_(values.cast<Complex>()), class_(ValueClass::Real) {}

  Index size() const noexcept { return values_.size(); }
  const ComplexVector& values() const noexcept { return values_; }
  ValueClass value_class() const noexcept { return class_; }
  bool is_real() const noexcept { return class_ == ValueClass::Real; }

  RealVector real_values() const {
    if (!is_real()) throw ClassError("signal has complex values");
    return values_.real();
  }

 private:
  ComplexVector values_;
  ValueClass class_;
};

/// Time-stamped sequence of equally sized graph signals.
class SignalSeries {
 public:
  SignalSeries(std::vector<double> times, std::vector<GraphSignal> frames)
      : times_(std::move(times)), frames_(std::move(frames)) {
    if (times_.size() != frames_.size())
      throw DimensionError("series has " + std::to_string(times_.size()) + " timestamps but " +
                           std::to_string(frames_.size()) + " frames");
    for (std::size_t k = 1; k < times_.size(); ++k) {
      if (!(times_[k] > times_[k - 1]))
        throw InputError("timestamps must be strictly increasing (row " + std::to_string(k) + ")");
    }
    for (const auto& f : frames_) {
      if (f.size() != frames_.front().size())
        throw DimensionError("series frames have differing lengths");
    }
  }

  std::size_t size() const noexcept { return frames_.size(); }
  bool empty() const noexcept { return frames_.empty(); }
  Index signal_size() const noexcept { return frames_.empty() ? 0 : frames_.front().size(); }
  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<GraphSignal>& frames() const noexcept { return frames_; }

 private:
  std::vector<double> times_;
  std::vector<GraphSignal> frames_;
};

struct DalesLawReport {
  bool compliant = true;
  std::vector<Index> offending_rows;
};

/// Flags vertices whose outgoing (row) weights mix signs. Diagnostic only.
inline DalesLawReport check_dales_law(const Graph& g) {
  if (!g.is_real()) throw ClassError("Dale's law check needs real weights");
  DalesLawReport report;
  const ComplexMatrix& a = g.adj();
  for (Index i = 0; i < g.n(); ++i) {
    bool has_pos = false;
    bool has_neg = false;
    for (Index j = 0; j < g.n(); ++j) {
      has_pos = has_pos || a(i, j).real() > 0.0;
      has_neg = has_neg || a(i, j).real() < 0.0;
    }
    if (has_pos && has_neg) report.offending_rows.push_back(i);
  }
  report.compliant = report.offending_rows.empty();
  return report;
}

}  // namespace digft
