#ifndef LAPSPREAD_GRAPH_IO_HPP
#define LAPSPREAD_GRAPH_IO_HPP

/// \file graph_io.hpp
/// \brief graph6 and plain edge-list readers/writers.
///
/// graph6 (single-byte header only, n <= 62): byte 0 is n + 63; then the
/// upper triangle bits x(0,1), x(0,2), x(1,2), x(0,3), ... (column by column)
/// are packed six per byte, most significant first, each byte offset by 63,
/// with the final byte zero-padded.

#include <cctype>
#include <charconv>
#include <cstddef>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lapspread/graph.hpp"

namespace lapspread {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at offset " + std::to_string(offset) + ")"), offset_(offset) {}

  /// Byte offset for graph6 input, 1-based line number for edge lists.
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

inline constexpr int kGraph6MaxOrder = 62;

namespace detail {
inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}
}  // namespace detail

inline Graph parse_graph6(std::string_view text) {
  text = detail::trim(text);
  if (text.empty()) throw ParseError("graph6: empty input", 0);

  const int header = static_cast<unsigned char>(text[0]);
  if (header == 126) throw ParseError("graph6: multi-byte header (n > 62) is not supported", 0);
  if (header < 63 || header > 126) throw ParseError("graph6: malformed header byte", 0);
  const int n = header - 63;

  const std::size_t bits = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  const std::size_t payload = (bits + 5) / 6;
  if (text.size() < 1 + payload) throw ParseError("graph6: truncated bit payload", text.size());
  if (text.size() > 1 + payload) throw ParseError("graph6: trailing bytes after payload", 1 + payload);

  for (std::size_t k = 1; k <= payload; ++k) {
    const int b = static_cast<unsigned char>(text[k]);
    if (b < 63 || b > 126) throw ParseError("graph6: byte value out of range", k);
  }

  Graph g(n);
  std::size_t index = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i, ++index) {
      const int byte = static_cast<unsigned char>(text[1 + index / 6]) - 63;
      if ((byte >> (5 - index % 6)) & 1) g.add_edge(i, j);
    }
  }
  for (; index < payload * 6; ++index) {
    const int byte = static_cast<unsigned char>(text[1 + index / 6]) - 63;
    if ((byte >> (5 - index % 6)) & 1) throw ParseError("graph6: nonzero padding bits", 1 + index / 6);
  }
  return g;
}

/// Encodes adjacency by local index; labels are not represented.
inline std::string encode_graph6(const Graph& g) {
  const int n = g.order();
  if (n > kGraph6MaxOrder) throw GraphError("graph6 encoding is limited to n <= 62");
  std::string out(1, static_cast<char>(n + 63));
  int acc = 0;
  int filled = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  return out;
}

/// Newline-separated graph6 lines. Blank lines and the optional
/// ">>graph6<<" marker are skipped; parse errors carry the 1-based line.
inline std::vector<Graph> read_graph6_corpus(std::istream& in, std::vector<std::string>* ids = nullptr) {
  std::vector<Graph> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = detail::trim(line);
    if (view.starts_with(">>graph6<<")) view.remove_prefix(10);
    if (view.empty()) continue;
    try {
      out.push_back(parse_graph6(view));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
    if (ids) ids->emplace_back(view);
  }
  return out;
}

/// "n" on the first non-blank line, then one "u v" pair per line.
/// Duplicate edges collapse; '#' starts a comment.
inline Graph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::optional<Graph> g;

  auto parse_int = [&](std::string_view tok) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || v < 0 || v > (1LL << 30)) {
      throw ParseError("edge list: expected a nonnegative integer, got '" + std::string(tok) + "'",
                       line_no);
    }
    return static_cast<int>(v);
  };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::istringstream tokens{std::string(line)};
    std::vector<std::string> tok;
    for (std::string t; tokens >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (!g) {
      if (tok.size() != 1) throw ParseError("edge list: first line must hold the vertex count", line_no);
      g.emplace(parse_int(tok[0]));
      continue;
    }
    if (tok.size() != 2) throw ParseError("edge list: expected 'u v'", line_no);
    const int u = parse_int(tok[0]);
    const int v = parse_int(tok[1]);
    if (u >= g->order() || v >= g->order()) {
      throw ParseError("edge list: vertex index out of range", line_no);
    }
    if (u == v) throw ParseError("edge list: loop edge", line_no);
    g->add_edge(u, v);
  }
  if (!g) throw ParseError("edge list: missing vertex count", line_no);
  return *std::move(g);
}

inline std::string format_edge_list(const Graph& g) {
  std::string out = std::to_string(g.order()) + "\n";
  for (auto [a, b] : g.edges()) out += std::to_string(a) + " " + std::to_string(b) + "\n";
  return out;
}

}  // namespace lapspread

#endif  // LAPSPREAD_GRAPH_IO_HPP
