#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "digft/digft.hpp"

#ifndef DIGFT_VERSION
#define DIGFT_VERSION "0.1.0"
#endif

namespace digft::cli {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

enum ExitCode : int { Ok = 0, Failed = 1, Usage = 2, BadInput = 3, Numerical = 4 };

/// Lowercase hex SHA-256 of a file's bytes.
inline std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int k = 0; k < len; ++k) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[k]);
  return hex.str();
}

inline void write_json(const json& j, const fs::path& path) {
  auto out = detail::open_output(path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

inline json read_json(const fs::path& path) {
  auto in = detail::open_input(path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

/// Provenance record written next to every output.
struct Manifest {
  std::string command;
  std::vector<std::string> argv;
  json config = json::object();
  std::optional<std::uint64_t> seed;
  std::vector<fs::path> inputs;
  std::vector<fs::path> outputs;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  json to_json() const {
    json j;
    j["command"] = command;
    j["argv"] = argv;
    j["version"] = DIGFT_VERSION;
    j["seed"] = seed ? json(*seed) : json(nullptr);
    j["config"] = config;
    json in = json::array();
    for (const auto& p : inputs) in.push_back({{"path", p.string()}, {"sha256", sha256_file(p)}});
    j["inputs"] = in;
    json out = json::array();
    for (const auto& p : outputs) out.push_back(p.string());
    j["outputs"] = out;
    j["runtime_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return j;
  }

  void write(const fs::path& path) const { write_json(to_json(), path); }
};

inline fs::path sibling_manifest(const fs::path& file) { return fs::path(file.string() + ".manifest.json"); }

inline void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create directory " + dir.string());
}

inline VariationKind parse_kind(const std::string& s) {
  if (s == "tv") return VariationKind::TV;
  if (s == "dv") return VariationKind::DV;
  if (s == "idv") return VariationKind::IDV;
  return VariationKind::CDV;
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  for (char& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

inline std::string frequencies_row(const RealVector& f) {
  std::string line;
  for (Index k = 0; k < f.size(); ++k) {
    if (k) line.push_back(',');
    line += format_real(f(k));
  }
  return line;
}

// ---------------------------------------------------------------- basis I/O

inline void save_basis(const GftBasis& b, const fs::path& dir, json extra) {
  ensure_dir(dir);
  save_matrix(b.columns, dir / "columns.csv");
  {
    auto out = detail::open_output(dir / "frequencies.csv");
    out << frequencies_row(b.frequencies) << '\n';
  }
  json j;
  j["kind"] = lower(to_string(b.kind));
  j["method"] = to_string(b.method);
  j["n"] = b.size();
  j["graph"] = b.graph_ref;
  j["f_max"] = b.f_max;
  j["max_frequency"] = b.max_frequency();
  j["dispersion"] = b.dispersion();
  j["dispersion_endpoint_free"] = b.consecutive_dispersion();
  j["orthonormality_error"] = b.orthonormality_error();
  j["frequencies"] = std::vector<double>(b.frequencies.data(), b.frequencies.data() + b.frequencies.size());
  j["columns"] = "columns.csv";
  j.update(extra);
  write_json(j, dir / "basis.json");
}

inline GftBasis load_basis(const fs::path& dir) {
  const json j = read_json(dir / "basis.json");
  GftBasis b;
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind != "idv" && kind != "cdv" && kind != "tv" && kind != "dv") throw InputError("basis.json: unknown kind " + kind);
    b.kind = parse_kind(kind);
    b.method = j.at("method").get<std::string>() == "feasible" ? BasisMethod::Feasible : BasisMethod::Greedy;
    b.graph_ref = j.value("graph", std::string());
    b.f_max = j.at("f_max").get<double>();
    const auto f = j.at("frequencies").get<std::vector<double>>();
    b.frequencies = Eigen::Map<const RealVector>(f.data(), static_cast<Index>(f.size()));
    b.columns = load_matrix(dir / j.value("columns", std::string("columns.csv")));
  } catch (const json::exception& e) {
    throw ParseError((dir / "basis.json").string() + ": " + e.what());
  }
  if (b.columns.rows() != b.columns.cols() || b.columns.cols() != b.frequencies.size())
    throw DimensionError("basis columns are " + std::to_string(b.columns.rows()) + "x" +
                         std::to_string(b.columns.cols()) + " with " + std::to_string(b.frequencies.size()) +
                         " frequencies");
  return b;
}

/// {"label": [k, ...], ...}; a harmonic may belong to at most one group.
inline std::map<Index, std::string> load_groups(const fs::path& path, Index n) {
  const json j = read_json(path);
  if (!j.is_object()) throw ParseError(path.string() + ": expected an object of label -> index list");
  std::map<Index, std::string> groups;
  for (const auto& [label, idx] : j.items()) {
    if (!idx.is_array()) throw ParseError(path.string() + ": group '" + label + "' is not a list");
    for (const auto& v : idx) {
      if (!v.is_number_integer()) throw ParseError(path.string() + ": group '" + label + "' has a non-integer index");
      const Index k = v.get<Index>();
      if (k < 0 || k >= n) throw InputError("group '" + label + "' index " + std::to_string(k) + " out of range");
      if (!groups.emplace(k, label).second)
        throw InputError("harmonic " + std::to_string(k) + " is in more than one group");
    }
  }
  return groups;
}

// ---------------------------------------------------------------- options

struct EnsembleOptions {
  Index n = 16;
  int degree = 2;
  double p = 0.2;
  int communities = 3;
  int per_community = 8;
  double p_in = 0.5;
  double p_out = 0.1;
  bool bidirectional = false;
  bool unordered_pairs = false;

  void add(CLI::App* app) {
    app->add_option("--n", n, "Vertices (ring, er)")->capture_default_str();
    app->add_option("--degree", degree, "Ring lattice degree (even)")->capture_default_str();
    app->add_option("--p", p, "ER edge probability")->capture_default_str();
    app->add_option("--communities", communities, "SBM community count")->capture_default_str();
    app->add_option("--per-community", per_community, "SBM vertices per community")->capture_default_str();
    app->add_option("--p-in", p_in, "SBM within-community probability")->capture_default_str();
    app->add_option("--p-out", p_out, "SBM across-community probability")->capture_default_str();
    app->add_flag("--bidirectional", bidirectional, "Ring: keep both directions of each lattice edge");
    app->add_flag("--unordered-pairs", unordered_pairs, "ER/SBM: sample unordered pairs, orient at random");
  }

  EnsembleConfig make(GraphClass c) const {
    EnsembleConfig cfg = c == GraphClass::RingLattice ? EnsembleConfig::ring(n, degree)
                         : c == GraphClass::ErdosRenyi ? EnsembleConfig::erdos_renyi(n, p)
                                                       : EnsembleConfig::stochastic_block(communities, per_community, p_in, p_out);
    cfg.bidirectional = bidirectional;
    cfg.unordered_pairs = unordered_pairs;
    return cfg;
  }

  std::vector<EnsembleConfig> standard() const {
    return {make(GraphClass::RingLattice), make(GraphClass::ErdosRenyi), make(GraphClass::StochasticBlock)};
  }

  json to_json() const {
    return {{"n", n},         {"degree", degree}, {"p", p},
            {"communities", communities},         {"per_community", per_community},
            {"p_in", p_in},   {"p_out", p_out},   {"bidirectional", bidirectional},
            {"unordered_pairs", unordered_pairs}};
  }
};

struct DescentOptions {
  int K = 16;
  int restarts = 10;
  int max_iters = 5000;

  void add(CLI::App* app) {
    app->add_option("--K", K, "Phase grid size for CDV greedy selection")->capture_default_str();
    app->add_option("--restarts", restarts, "Feasible method restarts")->capture_default_str();
    app->add_option("--max-iters", max_iters, "Iteration cap per restart")->capture_default_str();
  }
  GreedyConfig greedy() const { return GreedyConfig{K}; }
  DescentConfig descent(std::uint64_t seed) const {
    DescentConfig d;
    d.restarts = restarts;
    d.max_iters = max_iters;
    d.seed = seed;
    return d;
  }
  json to_json() const { return {{"K", K}, {"restarts", restarts}, {"max_iters", max_iters}}; }
};

inline unsigned resolve_jobs(unsigned requested) { return requested > 0 ? requested : default_jobs(); }

inline std::string sig6(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

// ---------------------------------------------------------------- commands

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::vector<std::string> argv;
};

inline Manifest start_manifest(const Context& ctx, const std::string& command) {
  Manifest m;
  m.command = command;
  m.argv = ctx.argv;
  return m;
}

struct GenArgs {
  std::string graph_class;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> instance;
  fs::path out;
  bool emit_derived = false;
  EnsembleOptions ensemble;
};

inline int run_gen(const Context& ctx, const GenArgs& a) {
  const GraphClass c = a.graph_class == "ring" ? GraphClass::RingLattice
                       : a.graph_class == "er" ? GraphClass::ErdosRenyi
                                               : GraphClass::StochasticBlock;
  const EnsembleConfig cfg = a.ensemble.make(c);
  const std::uint64_t s = a.instance ? instance_seed(a.seed, static_cast<std::size_t>(c), *a.instance) : a.seed;
  const DerivedGraphs d = generate(cfg, s);

  Manifest m = start_manifest(ctx, "gen");
  m.seed = a.seed;
  m.config = {{"class", a.graph_class}, {"ensemble", a.ensemble.to_json()},
              {"instance", a.instance ? json(*a.instance) : json(nullptr)}, {"instance_seed", s},
              {"emit_derived", a.emit_derived}};
  const GraphFormat fmt = guess_graph_format(a.out);
  if (a.out.has_parent_path()) ensure_dir(a.out.parent_path());
  save_graph(d.g, a.out, fmt);
  m.outputs.push_back(a.out);
  if (a.emit_derived) {
    const fs::path stem = a.out.parent_path() / a.out.stem();
    const fs::path gi = stem.string() + "_i" + a.out.extension().string();
    const fs::path gp = stem.string() + "_p" + a.out.extension().string();
    save_graph(d.g_i, gi, fmt);
    save_graph(d.g_p, gp, fmt);
    m.outputs.push_back(gi);
    m.outputs.push_back(gp);
  }
  m.write(sibling_manifest(a.out));
  ctx.out << "wrote " << a.out.string() << " (" << d.g.n() << " vertices, " << d.g.edge_count() << " edges)\n";
  return Ok;
}

struct VariationArgs {
  fs::path graph;
  fs::path signal;
  std::string kind;
};

/// One value per frame of the signal file, full precision.
inline int run_variation(const Context& ctx, const VariationArgs& a) {
  const Graph g = load_graph(a.graph);
  const SignalSeries s = load_signal_series(a.signal);
  const VariationKind kind = parse_kind(a.kind);
  for (const GraphSignal& x : s.frames()) ctx.out << format_real(variation(kind, g, x)) << '\n';
  return Ok;
}

struct BasisArgs {
  fs::path graph;
  std::string kind;
  std::string method;
  std::uint64_t seed = 0;
  fs::path out;
  DescentOptions descent;
};

inline int run_basis(const Context& ctx, const BasisArgs& a) {
  const Graph g = load_graph(a.graph);
  const VariationKind kind = parse_kind(a.kind);
  Manifest m = start_manifest(ctx, "basis");
  m.seed = a.seed;
  m.inputs.push_back(a.graph);
  m.config = {{"kind", a.kind}, {"method", a.method}, {"descent", a.descent.to_json()}};

  json extra = json::object();
  GftBasis b;
  if (a.method == "greedy") {
    b = greedy_basis(g, kind, a.descent.greedy());
  } else {
    const FeasibleResult r = feasible_basis(g, kind, a.descent.descent(a.seed), a.descent.greedy());
    b = r.basis;
    extra = {{"warm_start_dispersion", r.warm_start_dispersion},
             {"final_dispersion", r.final_dispersion},
             {"best_restart", r.best_restart},
             {"iterations_exhausted", r.iterations_exhausted},
             {"restart_start", r.restart_start},
             {"restart_final", r.restart_final}};
  }
  save_basis(b, a.out, extra);
  m.outputs = {a.out / "basis.json", a.out / "columns.csv", a.out / "frequencies.csv"};
  m.write(a.out / "manifest.json");
  ctx.out << a.method << ' ' << a.kind << " basis, N=" << b.size() << ", max frequency " << sig6(b.max_frequency())
          << ", dispersion " << sig6(b.dispersion()) << '\n';
  return Ok;
}

struct TransformArgs {
  fs::path basis;
  fs::path series;
  fs::path out;
};

inline int run_transform(const Context& ctx, const TransformArgs& a) {
  const GftBasis b = load_basis(a.basis);
  const SignalSeries s = load_signal_series(a.series);
  const PowerSpectrum p = power_spectrum(b, s, true);
  {
    auto out = detail::open_output(a.out);
    out << 't';
    for (Index k = 0; k < b.size(); ++k) out << ",c" << k;
    out << '\n';
    for (Index t = 0; t < p.coefficients.rows(); ++t) {
      out << format_real(s.times()[static_cast<std::size_t>(t)]);
      for (Index k = 0; k < p.coefficients.cols(); ++k) out << ',' << format_complex(p.coefficients(t, k));
      out << '\n';
    }
    if (!out) throw IoError("write failed: " + a.out.string());
  }
  Manifest m = start_manifest(ctx, "transform");
  m.inputs = {a.basis / "basis.json", a.basis / "columns.csv", a.series};
  m.outputs = {a.out};
  m.write(sibling_manifest(a.out));
  ctx.out << "transformed " << s.size() << " frames into " << a.out.string() << '\n';
  return Ok;
}

struct SpectraArgs {
  fs::path basis;
  fs::path series;
  std::optional<fs::path> groups;
  fs::path out;
};

inline fs::path groups_output(const fs::path& out) { return out.parent_path() / (out.stem().string() + ".groups.csv"); }

inline int run_spectra(const Context& ctx, const SpectraArgs& a) {
  const GftBasis b = load_basis(a.basis);
  const SignalSeries s = load_signal_series(a.series);
  const PowerSpectrum p = power_spectrum(b, s);
  Manifest m = start_manifest(ctx, "spectra");
  m.inputs = {a.basis / "basis.json", a.basis / "columns.csv", a.series};
  {
    auto out = detail::open_output(a.out);
    out << "k,frequency,value\n";
    for (Index k = 0; k < p.power.size(); ++k)
      out << k << ',' << format_real(p.frequencies(k)) << ',' << format_real(p.power(k)) << '\n';
    if (!out) throw IoError("write failed: " + a.out.string());
  }
  m.outputs.push_back(a.out);
  if (a.groups) {
    m.inputs.push_back(*a.groups);
    const auto totals = group_powers(p, load_groups(*a.groups, b.size()));
    const fs::path gpath = groups_output(a.out);
    auto out = detail::open_output(gpath);
    out << "group,value\n";
    for (const auto& [label, v] : totals) {
      out << label << ',' << format_real(v) << '\n';
      ctx.out << label << '\t' << sig6(v) << '\n';
    }
    m.outputs.push_back(gpath);
  }
  m.write(sibling_manifest(a.out));
  ctx.out << "total power " << sig6(p.total()) << '\n';
  return Ok;
}

struct DiscordanceArgs {
  std::size_t instances = 10000;
  std::uint64_t seed = 0;
  fs::path out;
  unsigned jobs = 0;
  EnsembleOptions ensemble;
};

inline int run_discordance(const Context& ctx, const DiscordanceArgs& a) {
  Manifest m = start_manifest(ctx, "experiment-discordance");
  const unsigned jobs = resolve_jobs(a.jobs);
  const DiscordanceReport r = discordance_experiment(a.ensemble.standard(), a.instances, a.seed, jobs);
  ensure_dir(a.out);
  {
    auto out = detail::open_output(a.out / "discordance.csv");
    out << "class,instance,comparison,discordant\n";
    for (const auto& rec : r.records)
      out << r.per_class[rec.class_index].name << ',' << rec.instance << ','
          << (rec.comparison == 1 ? "dv_vs_idv" : "dv_vs_cdv") << ',' << (rec.discordant ? 1 : 0) << '\n';
    if (!out) throw IoError("write failed");
  }
  json classes = json::array();
  for (const auto& st : r.per_class)
    classes.push_back({{"class", st.name},
                       {"comparisons", st.comparisons},
                       {"discordant", st.discordant},
                       {"discordant_idv", st.discordant_idv},
                       {"discordant_cdv", st.discordant_cdv},
                       {"fraction", st.fraction()}});
  write_json({{"seed", a.seed},
              {"instances", a.instances},
              {"comparisons", r.comparisons},
              {"discordant", r.discordant},
              {"fraction_discordant", r.fraction_discordant},
              {"classes", classes}},
             a.out / "summary.json");

  m.seed = a.seed;
  m.config = {{"instances", a.instances}, {"jobs", jobs}, {"ensemble", a.ensemble.to_json()}};
  m.outputs = {a.out / "discordance.csv", a.out / "summary.json"};
  m.write(a.out / "manifest.json");

  ctx.out << "class\tcomparisons\tdiscordant\tfraction\n";
  for (const auto& st : r.per_class)
    ctx.out << st.name << '\t' << st.comparisons << '\t' << st.discordant << '\t' << sig6(st.fraction()) << '\n';
  ctx.out << "all\t" << r.comparisons << '\t' << r.discordant << '\t' << sig6(r.fraction_discordant) << '\n';
  return Ok;
}

struct CompareArgs {
  std::size_t graphs = 20;
  std::uint64_t seed = 0;
  fs::path out;
  unsigned jobs = 0;
  EnsembleOptions ensemble;
  DescentOptions descent;
};

inline int run_compare(const Context& ctx, const CompareArgs& a) {
  Manifest m = start_manifest(ctx, "experiment-compare");
  const unsigned jobs = resolve_jobs(a.jobs);
  const ComparisonReport r =
      method_comparison(a.ensemble.standard(), a.graphs, a.seed, a.descent.descent(0), a.descent.greedy(), jobs);
  ensure_dir(a.out);
  {
    auto out = detail::open_output(a.out / "comparison.csv");
    out << "class,instance,kind,method,max_freq,delta_paper,delta_endpoints\n";
    for (const auto& rec : r.records)
      out << rec.class_name << ',' << rec.instance << ',' << lower(to_string(rec.kind)) << ','
          << to_string(rec.method) << ',' << format_real(rec.max_freq) << ',' << format_real(rec.delta_paper) << ','
          << format_real(rec.delta_endpoints) << '\n';
    if (!out) throw IoError("write failed");
  }

  // Medians per (class, kind, method); records arrive grouped by class.
  json groups = json::array();
  ctx.out << "class\tkind\tmethod\tmedian_max_freq\tmedian_delta_paper\tmedian_delta_endpoints\n";
  std::vector<double> all_f, all_d;
  for (std::size_t c = 0; c < r.configs.size(); ++c)
    for (const VariationKind kind : {VariationKind::IDV, VariationKind::CDV})
      for (const BasisMethod method : {BasisMethod::Greedy, BasisMethod::Feasible}) {
        std::vector<double> f, dp, de;
        for (const auto& rec : r.records)
          if (rec.class_index == c && rec.kind == kind && rec.method == method) {
            f.push_back(rec.max_freq);
            dp.push_back(rec.delta_paper);
            de.push_back(rec.delta_endpoints);
          }
        if (f.empty()) continue;
        const std::string name = r.configs[c].name();
        groups.push_back({{"class", name},
                          {"kind", lower(to_string(kind))},
                          {"method", to_string(method)},
                          {"median_max_freq", median(f)},
                          {"median_delta_paper", median(dp)},
                          {"median_delta_endpoints", median(de)}});
        ctx.out << name << '\t' << lower(to_string(kind)) << '\t' << to_string(method) << '\t' << sig6(median(f))
                << '\t' << sig6(median(dp)) << '\t' << sig6(median(de)) << '\n';
      }
  for (const auto& rec : r.records) {
    all_f.push_back(rec.max_freq);
    all_d.push_back(rec.delta_paper);
  }
  std::size_t exhausted = 0;
  for (const auto& rec : r.records) exhausted += rec.iterations_exhausted;
  json summary = {{"seed", a.seed}, {"graphs_per_class", a.graphs}, {"groups", groups}, {"iterations_exhausted", exhausted}};
  if (all_f.size() >= 2) summary["pearson_max_freq_delta_paper"] = pearson(all_f, all_d);
  write_json(summary, a.out / "summary.json");

  m.seed = a.seed;
  m.config = {{"M", a.graphs}, {"jobs", jobs}, {"ensemble", a.ensemble.to_json()}, {"descent", a.descent.to_json()}};
  m.outputs = {a.out / "comparison.csv", a.out / "summary.json"};
  m.write(a.out / "manifest.json");
  return Ok;
}

struct ValidateArgs {
  fs::path graph;
  bool dales_law = false;
};

/// Exit 1 when the file is readable but not a valid graph, or violates Dale's law.
inline int run_validate(const Context& ctx, const ValidateArgs& a) {
  if (!fs::exists(a.graph)) throw IoError("cannot open " + a.graph.string());
  std::optional<Graph> g;
  try {
    g.emplace(load_graph(a.graph));
  } catch (const IoError&) {
    throw;
  } catch (const InputError& e) {
    ctx.out << "invalid: " << e.what() << '\n';
    return Failed;
  }
  ctx.out << "vertices " << g->n() << ", edges " << g->edge_count() << ", class "
          << lower(to_string(g->weight_class())) << (g->is_symmetric() ? ", symmetric" : ", directed") << '\n';
  if (!a.dales_law) return Ok;
  if (!g->is_real()) {
    ctx.out << "dale's law: not applicable to complex weights\n";
    return Failed;
  }
  const DalesLawReport r = check_dales_law(*g);
  if (r.compliant) {
    ctx.out << "dale's law: compliant\n";
    return Ok;
  }
  ctx.out << "dale's law: " << r.offending_rows.size() << " vertices with mixed-sign outgoing weights:";
  for (const Index i : r.offending_rows) ctx.out << ' ' << i;
  ctx.out << '\n';
  return Failed;
}

// ---------------------------------------------------------------- dispatch

/// Runs body and maps library errors to exit codes with a one-line diagnostic.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "digft: input error: " << e.what() << '\n';
    return BadInput;
  } catch (const ClassError& e) {
    err << "digft: input error: " << e.what() << '\n';
    return BadInput;
  } catch (const std::exception& e) {
    err << "digft: numerical failure: " << e.what() << '\n';
    return Numerical;
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph Fourier transforms for directed graphs with signed or complex weights", "digft"};
  app.set_version_flag("--version", DIGFT_VERSION);
  app.require_subcommand(1, 1);
  app.fallthrough(false);

  const std::vector<std::string> kinds_all{"tv", "dv", "idv", "cdv"};
  const std::vector<std::string> kinds_basis{"idv", "cdv"};

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "Sample a random graph from the ring, er or sbm ensemble");
  c_gen->add_option("--class", gen.graph_class, "Ensemble")->required()->check(CLI::IsMember({"ring", "er", "sbm"}));
  c_gen->add_option("--seed", gen.seed, "Seed")->capture_default_str();
  c_gen->add_option("--instance", gen.instance, "Draw instance T of an experiment run with --seed");
  c_gen->add_option("--out", gen.out, "Output graph (.csv dense, otherwise edge list)")->required();
  c_gen->add_flag("--emit-derived", gen.emit_derived, "Also write the _i and _p weight variants");
  gen.ensemble.add(c_gen);

  VariationArgs var;
  auto* c_var = app.add_subcommand("variation", "Print the variation of each signal frame");
  c_var->add_option("--graph", var.graph, "Graph file")->required();
  c_var->add_option("--signal", var.signal, "Signal CSV (t,v0,...)")->required();
  c_var->add_option("--kind", var.kind, "Measure")->required()->check(CLI::IsMember(kinds_all));

  BasisArgs bas;
  auto* c_bas = app.add_subcommand("basis", "Build a Fourier basis");
  c_bas->add_option("--graph", bas.graph, "Graph file")->required();
  c_bas->add_option("--kind", bas.kind, "Measure")->required()->check(CLI::IsMember(kinds_basis));
  c_bas->add_option("--method", bas.method, "Builder")->required()->check(CLI::IsMember({"greedy", "feasible"}));
  c_bas->add_option("--seed", bas.seed, "Seed for feasible restarts")->capture_default_str();
  c_bas->add_option("--out", bas.out, "Output directory")->required();
  bas.descent.add(c_bas);

  TransformArgs tr;
  auto* c_tr = app.add_subcommand("transform", "Forward transform of a signal series");
  c_tr->add_option("--basis", tr.basis, "Basis directory")->required();
  c_tr->add_option("--series", tr.series, "Signal CSV")->required();
  c_tr->add_option("--out", tr.out, "Coefficient CSV")->required();

  SpectraArgs sp;
  auto* c_sp = app.add_subcommand("spectra", "Power spectrum of a signal series");
  c_sp->add_option("--basis", sp.basis, "Basis directory")->required();
  c_sp->add_option("--series", sp.series, "Signal CSV")->required();
  c_sp->add_option("--groups", sp.groups, "JSON object mapping labels to harmonic index lists");
  c_sp->add_option("--out", sp.out, "Power CSV")->required();

  DiscordanceArgs dis;
  auto* c_dis = app.add_subcommand("experiment-discordance", "Ordering discordance between DV and IDV/CDV");
  c_dis->add_option("--instances", dis.instances, "Instances per class")->capture_default_str();
  c_dis->add_option("--seed", dis.seed, "Master seed")->capture_default_str();
  c_dis->add_option("--out", dis.out, "Output directory")->required();
  c_dis->add_option("--jobs", dis.jobs, "Worker threads (default: DIGFT_JOBS or all cores)");
  dis.ensemble.add(c_dis);

  CompareArgs cmp;
  auto* c_cmp = app.add_subcommand("experiment-compare", "Greedy vs feasible bases on random graphs");
  c_cmp->add_option("--M", cmp.graphs, "Graphs per class")->capture_default_str();
  c_cmp->add_option("--seed", cmp.seed, "Master seed")->capture_default_str();
  c_cmp->add_option("--out", cmp.out, "Output directory")->required();
  c_cmp->add_option("--jobs", cmp.jobs, "Worker threads (default: DIGFT_JOBS or all cores)");
  cmp.ensemble.add(c_cmp);
  cmp.descent.add(c_cmp);

  ValidateArgs val;
  auto* c_val = app.add_subcommand("validate", "Structural checks on a graph file");
  c_val->add_option("--graph", val.graph, "Graph file")->required();
  c_val->add_flag("--dales-law", val.dales_law, "Also require sign-consistent outgoing weights");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "digft: " << e.what() << '\n';
    return Usage;
  }

  const Context ctx{out, err, std::vector<std::string>(argv, argv + argc)};
  return guarded(err, [&]() -> int {
    if (c_gen->parsed()) return run_gen(ctx, gen);
    if (c_var->parsed()) return run_variation(ctx, var);
    if (c_bas->parsed()) return run_basis(ctx, bas);
    if (c_tr->parsed()) return run_transform(ctx, tr);
    if (c_sp->parsed()) return run_spectra(ctx, sp);
    if (c_dis->parsed()) return run_discordance(ctx, dis);
    if (c_cmp->parsed()) return run_compare(ctx, cmp);
    if (c_val->parsed()) return run_validate(ctx, val);
    err << "digft: no subcommand\n";
    return Usage;
  });
}

}  // namespace digft::cli
