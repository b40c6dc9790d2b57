#pragma once

// Forward/inverse transforms against a GftBasis and power spectra of series.

#include <map>
#include <string>

#include "digft/basis.hpp"
#include "digft/graph.hpp"

namespace digft {

struct Spectrum {
  ComplexVector coefficients;
  RealVector frequencies;
  std::string basis_ref;
};

struct PowerSpectrum {
  /// P_k = sum_t |<u_k, x(t)>|^2
  RealVector power;
  RealVector frequencies;
  /// Row t holds the coefficients of frame t; empty unless requested.
  ComplexMatrix coefficients;

  double total() const { return power.sum(); }
};

/// x_hat = U^H x
inline Spectrum forward(const GftBasis& basis, const GraphSignal& x) {
  if (x.size() != basis.columns.rows())
    throw DimensionError("signal length " + std::to_string(x.size()) + " does not match basis size " +
                         std::to_string(basis.columns.rows()));
  return {basis.columns.adjoint() * x.values(), basis.frequencies, basis.graph_ref};
}

/// x = U x_hat
inline GraphSignal inverse(const GftBasis& basis, const Spectrum& s) {
  if (s.coefficients.size() != basis.columns.cols())
    throw DimensionError("spectrum length " + std::to_string(s.coefficients.size()) +
                         " does not match basis size " + std::to_string(basis.columns.cols()));
  return GraphSignal(ComplexVector(basis.columns * s.coefficients));
}

inline PowerSpectrum power_spectrum(const GftBasis& basis, const SignalSeries& series,
                                    bool keep_coefficients = false) {
  if (series.empty()) throw InputError("empty signal series");
  if (series.signal_size() != basis.columns.rows())
    throw DimensionError("series frames have length " + std::to_string(series.signal_size()) +
                         ", basis expects " + std::to_string(basis.columns.rows()));
  const Index t_count = static_cast<Index>(series.size());
  ComplexMatrix x(basis.columns.rows(), t_count);
  for (Index t = 0; t < t_count; ++t) x.col(t) = series.frames()[static_cast<std::size_t>(t)].values();
  const ComplexMatrix coeffs = basis.columns.adjoint() * x;  // harmonics x time

  PowerSpectrum out;
  out.power = coeffs.cwiseAbs2().rowwise().sum();
  out.frequencies = basis.frequencies;
  if (keep_coefficients) out.coefficients = coeffs.transpose();
  return out;
}

/// Sums power per label; unlabeled harmonics go to "other".
inline std::map<std::string, double> group_powers(const PowerSpectrum& p, const std::map<Index, std::string>& groups) {
  std::map<std::string, double> out;
  for (const auto& entry : groups) {
    const Index k = entry.first;
    if (k < 0 || k >= p.power.size())
      throw InputError("harmonic index " + std::to_string(k) + " out of range [0, " +
                       std::to_string(p.power.size()) + ")");
  }
  for (Index k = 0; k < p.power.size(); ++k) {
    const auto it = groups.find(k);
    out[it == groups.end() ? std::string("other") : it->second] += p.power(k);
  }
  return out;
}

}  // namespace digft
