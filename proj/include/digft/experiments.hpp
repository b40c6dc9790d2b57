#pragma once

// Random signed/complex graph ensembles, the ordering-discordance study and
// the greedy-vs-feasible comparison harness.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "digft/basis.hpp"
#include "digft/parallel.hpp"
#include "digft/random.hpp"
#include "digft/variation.hpp"

namespace digft {

enum class GraphClass { RingLattice, ErdosRenyi, StochasticBlock };

inline std::string_view to_string(GraphClass c) {
  switch (c) {
    case GraphClass::RingLattice: return "ring";
    case GraphClass::ErdosRenyi: return "er";
    case GraphClass::StochasticBlock: return "sbm";
  }
  return "?";
}

inline std::vector<Complex> default_weight_set() {
  return {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)};
}

struct EnsembleConfig {
  GraphClass graph_class = GraphClass::RingLattice;
  Index n = 16;
  /// Ring lattice: undirected degree (even), i.e. degree/2 neighbours per side.
  int degree = 2;
  /// Ring lattice: emit both directions of each lattice edge instead of one
  /// randomly oriented edge.
  bool bidirectional = false;
  double p = 0.2;
  int communities = 3;
  int per_community = 8;
  double p_in = 0.5;
  double p_out = 0.1;
  /// ER/SBM: sample unordered pairs and orient each edge at random, instead of
  /// sampling every ordered pair independently.
  bool unordered_pairs = false;
  std::vector<Complex> weight_set = default_weight_set();

  static EnsembleConfig ring(Index n = 16, int degree = 2) {
    EnsembleConfig c;
    c.graph_class = GraphClass::RingLattice;
    c.n = n;
    c.degree = degree;
    return c;
  }
  static EnsembleConfig erdos_renyi(Index n = 16, double p = 0.2) {
    EnsembleConfig c;
    c.graph_class = GraphClass::ErdosRenyi;
    c.n = n;
    c.p = p;
    return c;
  }
  static EnsembleConfig stochastic_block(int communities = 3, int per_community = 8, double p_in = 0.5,
                                         double p_out = 0.1) {
    EnsembleConfig c;
    c.graph_class = GraphClass::StochasticBlock;
    c.communities = communities;
    c.per_community = per_community;
    c.n = static_cast<Index>(communities) * per_community;
    c.p_in = p_in;
    c.p_out = p_out;
    return c;
  }
  /// Ring, ER and SBM with the default parameters.
  static std::vector<EnsembleConfig> standard_set() { return {ring(), erdos_renyi(), stochastic_block()}; }

  Index vertex_count() const {
    return graph_class == GraphClass::StochasticBlock ? static_cast<Index>(communities) * per_community : n;
  }

  std::string name() const { return std::string(to_string(graph_class)); }

  void validate() const {
    if (vertex_count() < 2) throw InputError("ensemble needs at least 2 vertices");
    auto prob = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!prob(p) || !prob(p_in) || !prob(p_out)) throw InputError("probabilities must lie in [0, 1]");
    if (graph_class == GraphClass::RingLattice && (degree < 2 || degree % 2 != 0 || degree >= n))
      throw InputError("ring lattice degree must be even, >= 2 and < n");
    if (weight_set.empty()) throw InputError("weight set is empty");
    for (const Complex w : weight_set)
      if (w == Complex(0.0, 0.0)) throw InputError("weight set contains 0");
  }
};

/// One random instance in its three weight variants on a shared edge pattern.
struct DerivedGraphs {
  Graph g;    ///< original weights
  Graph g_i;  ///< each weight w replaced by Re w + Im w (so +-i -> +-1)
  Graph g_p;  ///< every edge weight 1
};

inline DerivedGraphs generate(const EnsembleConfig& cfg, std::uint64_t instance_seed) {
  cfg.validate();
  Rng rng(instance_seed);
  const Index n = cfg.vertex_count();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, cfg.weight_set.size() - 1);
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  auto weight = [&] { return cfg.weight_set[pick(rng)]; };
  auto place_undirected = [&](Index i, Index j) {
    if (unit(rng) < 0.5)
      a(i, j) = weight();
    else
      a(j, i) = weight();
  };

  switch (cfg.graph_class) {
    case GraphClass::RingLattice: {
      std::set<std::pair<Index, Index>> seen;
      for (Index i = 0; i < n; ++i) {
        for (int h = 1; h <= cfg.degree / 2; ++h) {
          const Index j = (i + h) % n;
          const auto key = std::minmax(i, j);
          if (!seen.insert(key).second) continue;
          if (cfg.bidirectional) {
            a(i, j) = weight();
            a(j, i) = weight();
          } else {
            place_undirected(i, j);
          }
        }
      }
      break;
    }
    case GraphClass::ErdosRenyi:
    case GraphClass::StochasticBlock: {
      auto prob = [&](Index i, Index j) {
        if (cfg.graph_class == GraphClass::ErdosRenyi) return cfg.p;
        return i / cfg.per_community == j / cfg.per_community ? cfg.p_in : cfg.p_out;
      };
      for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
          if (i == j) continue;
          if (cfg.unordered_pairs) {
            if (j < i) continue;
            if (unit(rng) < prob(i, j)) place_undirected(i, j);
          } else if (unit(rng) < prob(i, j)) {
            a(i, j) = weight();
          }
        }
      }
      break;
    }
  }

  ComplexMatrix ai = ComplexMatrix::Zero(n, n);
  ComplexMatrix ap = ComplexMatrix::Zero(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) {
      if (a(i, j) == Complex(0.0, 0.0)) continue;
      ai(i, j) = a(i, j).real() + a(i, j).imag();
      ap(i, j) = 1.0;
    }
  return {Graph(std::move(a), cfg.name()), Graph(std::move(ai), cfg.name() + "_i"),
          Graph(std::move(ap), cfg.name() + "_p")};
}

/// Seed of instance `index` of class slot `class_index` under `master`.
inline std::uint64_t instance_seed(std::uint64_t master, std::size_t class_index, std::uint64_t index) {
  return derive_seed(master, 0x636c617373ULL + class_index, index);
}

struct DiscordanceRecord {
  std::size_t class_index = 0;
  std::uint64_t instance = 0;
  /// 1: DV on G_P vs IDV on G_I; 2: DV on G_P vs CDV on G.
  int comparison = 0;
  bool discordant = false;
};

struct DiscordanceClassStats {
  std::string name;
  std::size_t comparisons = 0;
  std::size_t discordant = 0;
  std::size_t discordant_idv = 0;
  std::size_t discordant_cdv = 0;
  double fraction() const { return comparisons ? static_cast<double>(discordant) / comparisons : 0.0; }
};

struct DiscordanceReport {
  std::uint64_t seed = 0;
  std::size_t instances = 0;
  std::vector<EnsembleConfig> configs;
  std::vector<DiscordanceClassStats> per_class;
  std::vector<DiscordanceRecord> records;
  std::size_t comparisons = 0;
  std::size_t discordant = 0;
  double fraction_discordant = 0.0;
};

namespace detail {

/// -1, 0, +1 with |d| <= 1e-12 treated as a tie.
inline int tie_sign(double d) { return std::abs(d) <= 1e-12 ? 0 : (d > 0.0 ? 1 : -1); }

inline bool discordant(double reference_delta, double other_delta) {
  const int a = tie_sign(reference_delta);
  const int b = tie_sign(other_delta);
  return a != 0 && b != 0 && a != b;
}

}  // namespace detail

/// Two random real unit vectors per instance; each instance yields a DV-vs-IDV
/// and a DV-vs-CDV ordering comparison.
inline DiscordanceReport discordance_experiment(const std::vector<EnsembleConfig>& configs, std::size_t instances,
                                                std::uint64_t seed, unsigned jobs = default_jobs()) {
  for (const auto& c : configs) c.validate();
  DiscordanceReport report;
  report.seed = seed;
  report.instances = instances;
  report.configs = configs;
  const std::size_t total = configs.size() * instances;
  report.records.resize(2 * total);

  parallel_for(total, jobs, [&](std::size_t task) {
    const std::size_t c = task / instances;
    const std::uint64_t t = task % instances;
    const std::uint64_t s = instance_seed(seed, c, t);
    const DerivedGraphs d = generate(configs[c], s);
    Rng rng(splitmix64(s ^ 0x766563ULL));
    const Index n = d.g.n();
    const GraphSignal x(random_unit_vector(rng, n));
    const GraphSignal y(random_unit_vector(rng, n));
    const RealMatrix ap = d.g_p.real_adj();
    const RealMatrix ai = d.g_i.real_adj();
    const double dv = indefinite_dv(ap, x.real_values()) - indefinite_dv(ap, y.real_values());
    const double idv = indefinite_dv(ai, x.real_values()) - indefinite_dv(ai, y.real_values());
    const double cdv = complex_dv(d.g, x) - complex_dv(d.g, y);
    report.records[2 * task] = {c, t, 1, detail::discordant(dv, idv)};
    report.records[2 * task + 1] = {c, t, 2, detail::discordant(dv, cdv)};
  });

  report.per_class.resize(configs.size());
  for (std::size_t c = 0; c < configs.size(); ++c) report.per_class[c].name = configs[c].name();
  for (const auto& r : report.records) {
    auto& st = report.per_class[r.class_index];
    ++st.comparisons;
    if (r.discordant) {
      ++st.discordant;
      ++(r.comparison == 1 ? st.discordant_idv : st.discordant_cdv);
    }
  }
  for (const auto& st : report.per_class) {
    report.comparisons += st.comparisons;
    report.discordant += st.discordant;
  }
  report.fraction_discordant =
      report.comparisons ? static_cast<double>(report.discordant) / report.comparisons : 0.0;
  return report;
}

struct ComparisonRecord {
  std::size_t class_index = 0;
  std::string class_name;
  std::uint64_t instance = 0;
  VariationKind kind = VariationKind::IDV;
  BasisMethod method = BasisMethod::Greedy;
  double max_freq = 0.0;
  double delta_paper = 0.0;
  double delta_endpoints = 0.0;
  double orthonormality_error = 0.0;
  /// Feasible only: objective at the greedy warm start (restart 0).
  double warm_start_dispersion = 0.0;
  bool iterations_exhausted = false;
  std::optional<GftBasis> basis;
};

struct ComparisonReport {
  std::uint64_t seed = 0;
  std::size_t graphs_per_class = 0;
  std::vector<EnsembleConfig> configs;
  DescentConfig descent;
  GreedyConfig greedy;
  std::vector<ComparisonRecord> records;
};

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InputError("pearson needs two equal-length samples");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
    syy += (y[k] - my) * (y[k] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

inline double median(std::vector<double> v) {
  if (v.empty()) throw InputError("median of empty sample");
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

/// For each of M graphs per class: greedy and feasible bases under IDV (on
/// G_I) and CDV (on G). Records are ordered (class, instance, kind, method).
inline ComparisonReport method_comparison(const std::vector<EnsembleConfig>& configs, std::size_t graphs_per_class,
                                          std::uint64_t seed, const DescentConfig& descent = {},
                                          const GreedyConfig& greedy = {}, unsigned jobs = default_jobs(),
                                          bool keep_bases = false) {
  for (const auto& c : configs) c.validate();
  descent.validate();
  greedy.validate();
  ComparisonReport report;
  report.seed = seed;
  report.graphs_per_class = graphs_per_class;
  report.configs = configs;
  report.descent = descent;
  report.greedy = greedy;
  const std::size_t tasks = configs.size() * graphs_per_class * 2;
  report.records.resize(2 * tasks);

  parallel_for(tasks, jobs, [&](std::size_t task) {
    const std::size_t c = task / (2 * graphs_per_class);
    const std::uint64_t t = (task / 2) % graphs_per_class;
    const VariationKind kind = task % 2 == 0 ? VariationKind::IDV : VariationKind::CDV;
    const std::uint64_t s = instance_seed(seed, c, t);
    const DerivedGraphs d = generate(configs[c], s);
    const Graph& g = kind == VariationKind::IDV ? d.g_i : d.g;

    DescentConfig dc = descent;
    dc.seed = splitmix64(s ^ (kind == VariationKind::IDV ? 0x696476ULL : 0x636476ULL));
    const GftBasis gb = greedy_basis(g, kind, greedy);
    const FeasibleResult fr = feasible_basis(g, kind, dc, greedy);

    auto fill = [&](ComparisonRecord& r, const GftBasis& b) {
      r.class_index = c;
      r.class_name = configs[c].name();
      r.instance = t;
      r.kind = kind;
      r.method = b.method;
      r.max_freq = b.max_frequency();
      r.delta_paper = b.consecutive_dispersion();
      r.delta_endpoints = b.dispersion();
      r.orthonormality_error = b.orthonormality_error();
      if (keep_bases) r.basis = b;
    };
    ComparisonRecord& rg = report.records[2 * task];
    ComparisonRecord& rf = report.records[2 * task + 1];
    fill(rg, gb);
    fill(rf, fr.basis);
    rf.warm_start_dispersion = fr.warm_start_dispersion;
    rf.iterations_exhausted = fr.iterations_exhausted;
  });
  return report;
}

}  // namespace digft
