#pragma once

// Text formats: edge lists, dense complex CSV matrices and signal-series CSV.
// Complex scalars are written as "a+bi" / "a-bi" using shortest round-trip
// decimal representations, so save -> load is exact.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "digft/graph.hpp"

namespace digft {

enum class GraphFormat { EdgeList, DenseCsv };

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

inline std::optional<double> parse_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

template <typename Int>
std::optional<Int> parse_int(std::string_view s) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

inline void append_double(std::string& out, double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

}  // namespace detail

/// "a+bi" with shortest round-trip decimals; real values still carry "+0i".
inline std::string format_complex(Complex z) {
  std::string out;
  detail::append_double(out, z.real());
  const double im = z.imag();
  if (std::signbit(im)) {
    detail::append_double(out, im);  // to_chars emits the leading '-'
  } else {
    out.push_back('+');
    detail::append_double(out, im);
  }
  out.push_back('i');
  return out;
}

inline std::string format_real(double v) {
  std::string out;
  detail::append_double(out, v);
  return out;
}

/// Accepts "a", "a+bi", "a-bi" and "bi" (exponents allowed in either part).
inline std::optional<Complex> parse_complex(std::string_view s) {
  s = detail::trim(s);
  if (s.empty()) return std::nullopt;
  if (s.back() != 'i') {
    const auto re = detail::parse_double(s);
    if (!re) return std::nullopt;
    return Complex(*re, 0.0);
  }
  s.remove_suffix(1);
  // The imaginary part starts at the last sign that is not an exponent sign.
  std::size_t split_at = std::string_view::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  if (split_at == std::string_view::npos) {
    const auto im = detail::parse_double(s);
    if (!im) return std::nullopt;
    return Complex(0.0, *im);
  }
  const auto re = detail::parse_double(s.substr(0, split_at));
  const auto im = detail::parse_double(s.substr(split_at));
  if (!re || !im) return std::nullopt;
  return Complex(*re, *im);
}

/// Edge list: "src dst re [im]" per line (tab or space separated), '#' comments,
/// optional "#n=<N>" header. Without the header N = 1 + max index.
inline Graph parse_edge_list(std::istream& in, std::string label = {}) {
  struct Edge {
    Index src, dst;
    Complex w;
    std::size_t line;
  };
  std::vector<Edge> edges;
  std::optional<Index> declared_n;
  Index max_index = -1;
  std::string line;
  std::size_t line_no = 0;
  bool saw_content = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = detail::trim(line);
    if (view.empty()) continue;
    saw_content = true;
    if (view.front() == '#') {
      const std::string_view body = detail::trim(view.substr(1));
      if (body.substr(0, 2) == "n=") {
        const auto n = detail::parse_int<long long>(detail::trim(body.substr(2)));
        if (!n || *n < 1) throw ParseError("bad vertex-count header", line_no);
        declared_n = static_cast<Index>(*n);
      }
      continue;
    }
    const auto fields = detail::split_ws(view);
    if (fields.size() != 3 && fields.size() != 4)
      throw ParseError("expected 'src dst re im', got " + std::to_string(fields.size()) + " fields",
                       line_no);
    const auto src = detail::parse_int<long long>(fields[0]);
    const auto dst = detail::parse_int<long long>(fields[1]);
    const auto re = detail::parse_double(fields[2]);
    const auto im = fields.size() == 4 ? detail::parse_double(fields[3]) : std::optional<double>(0.0);
    if (!src || !dst || *src < 0 || *dst < 0) throw ParseError("bad vertex index", line_no);
    if (!re || !im) throw ParseError("bad weight", line_no);
    if (*src == *dst) throw SelfLoopError(static_cast<Index>(*src), line_no);
    edges.push_back({static_cast<Index>(*src), static_cast<Index>(*dst), Complex(*re, *im), line_no});
    max_index = std::max<Index>(max_index, std::max<Index>(*src, *dst));
  }
  if (!saw_content) throw ParseError("empty edge list");
  const Index n = declared_n.value_or(max_index + 1);
  if (n < 1) throw ParseError("edge list has no edges and no '#n=' header");
  ComplexMatrix adj = ComplexMatrix::Zero(n, n);
  for (const Edge& e : edges) {
    if (e.src >= n || e.dst >= n)
      throw ParseError("vertex index out of range [0, " + std::to_string(n) + ")", e.line);
    if (adj(e.src, e.dst) != Complex(0.0, 0.0)) throw ParseError("duplicate edge", e.line);
    adj(e.src, e.dst) = e.w;
  }
  return Graph(std::move(adj), std::move(label));
}

/// Dense CSV of complex entries; ragged rows are rejected.
inline ComplexMatrix parse_matrix_csv(std::istream& in) {
  std::vector<std::vector<Complex>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = detail::trim(line);
    if (view.empty() || view.front() == '#') continue;
    std::vector<Complex> row;
    for (const auto field : detail::split(view, ',')) {
      const auto z = parse_complex(field);
      if (!z) throw ParseError("bad complex entry '" + std::string(field) + "'", line_no);
      row.push_back(*z);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError("ragged row: " + std::to_string(row.size()) + " columns, expected " +
                           std::to_string(rows.front().size()),
                       line_no);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("empty matrix file");
  ComplexMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  return m;
}

inline void write_matrix_csv(std::ostream& out, const ComplexMatrix& m) {
  std::string line;
  for (Index i = 0; i < m.rows(); ++i) {
    line.clear();
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) line.push_back(',');
      line += format_complex(m(i, j));
    }
    out << line << '\n';
  }
}

inline void save_matrix(const ComplexMatrix& m, const std::filesystem::path& path) {
  auto out = detail::open_output(path);
  write_matrix_csv(out, m);
  if (!out) throw IoError("write failed: " + path.string());
}

inline ComplexMatrix load_matrix(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return parse_matrix_csv(in);
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << "#n=" << g.n() << '\n';
  for (Index i = 0; i < g.n(); ++i) {
    for (Index j = 0; j < g.n(); ++j) {
      const Complex w = g.adj()(i, j);
      if (w == Complex(0.0, 0.0)) continue;
      out << i << '\t' << j << '\t' << format_real(w.real()) << '\t' << format_real(w.imag()) << '\n';
    }
  }
}

inline void save_graph(const Graph& g, const std::filesystem::path& path,
                       GraphFormat format = GraphFormat::EdgeList) {
  auto out = detail::open_output(path);
  if (format == GraphFormat::EdgeList)
    write_edge_list(out, g);
  else
    write_matrix_csv(out, g.adj());
  if (!out) throw IoError("write failed: " + path.string());
}

/// ".csv" means dense, anything else an edge list.
inline GraphFormat guess_graph_format(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? GraphFormat::DenseCsv : GraphFormat::EdgeList;
}

inline Graph load_graph(const std::filesystem::path& path, GraphFormat format) {
  auto in = detail::open_input(path);
  const std::string label = path.filename().string();
  if (format == GraphFormat::EdgeList) return parse_edge_list(in, label);
  return Graph(parse_matrix_csv(in), label);
}

inline Graph load_graph(const std::filesystem::path& path) {
  return load_graph(path, guess_graph_format(path));
}

/// Header "t,v0,...,v{N-1}", one row per time step.
inline SignalSeries parse_signal_series(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> width;
  std::vector<double> times;
  std::vector<GraphSignal> frames;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = detail::trim(line);
    if (view.empty()) continue;
    const auto fields = detail::split(view, ',');
    if (!width) {
      if (fields.size() < 2 || fields.front() != "t")
        throw ParseError("expected header 't,v0,...'", line_no);
      width = fields.size();
      continue;
    }
    if (fields.size() != *width)
      throw ParseError("ragged row: " + std::to_string(fields.size()) + " columns, expected " +
                           std::to_string(*width),
                       line_no);
    const auto t = detail::parse_double(fields.front());
    if (!t) throw ParseError("bad timestamp", line_no);
    ComplexVector v(static_cast<Index>(*width - 1));
    for (std::size_t k = 1; k < fields.size(); ++k) {
      const auto z = parse_complex(fields[k]);
      if (!z) throw ParseError("bad value '" + std::string(fields[k]) + "'", line_no);
      v(static_cast<Index>(k - 1)) = *z;
    }
    times.push_back(*t);
    frames.emplace_back(std::move(v));
  }
  if (!width) throw ParseError("empty signal file");
  try {
    return SignalSeries(std::move(times), std::move(frames));
  } catch (const InputError& e) {
    throw ParseError(e.what());
  }
}

inline SignalSeries load_signal_series(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return parse_signal_series(in);
}

inline void write_signal_series(std::ostream& out, const SignalSeries& s) {
  out << 't';
  for (Index k = 0; k < s.signal_size(); ++k) out << ",v" << k;
  out << '\n';
  for (std::size_t r = 0; r < s.size(); ++r) {
    out << format_real(s.times()[r]);
    const auto& v = s.frames()[r];
    for (Index k = 0; k < v.size(); ++k) {
      out << ',' << (v.is_real() ? format_real(v.values()(k).real()) : format_complex(v.values()(k)));
    }
    out << '\n';
  }
}

inline void save_signal_series(const SignalSeries& s, const std::filesystem::path& path) {
  auto out = detail::open_output(path);
  write_signal_series(out, s);
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace digft
