#ifndef LAPSPREAD_GRAPH_HPP
#define LAPSPREAD_GRAPH_HPP

/// \file graph.hpp
/// \brief Simple labeled graphs on dense vertex indices, traversal and
///        standard generators.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lapspread {

/// Dense local index, valid in 0..n-1 of one particular graph.
using Vertex = int;
/// Stable vertex identifier; survives induced deletion.
using Label = int;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Simple undirected graph. Adjacency rows are bit-sets over local indices;
/// a parallel label array maps local indices to stable identifiers.
/// Values are immutable once built, apart from the builder-style add_edge.
class Graph {
 public:
  Graph() = default;

  explicit Graph(int n) : Graph(n, identity_labels(n)) {}

  Graph(int n, std::vector<Label> labels)
      : n_(n),
        words_(words_for(n)),
        labels_(std::move(labels)),
        rows_(static_cast<std::size_t>(n) * words_, 0) {
    if (n < 0) throw GraphError("negative vertex count");
    if (static_cast<int>(labels_.size()) != n) {
      throw GraphError("label count does not match vertex count");
    }
    std::vector<Label> sorted = labels_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw GraphError("vertex labels must be pairwise distinct");
    }
  }

  int order() const { return n_; }
  std::span<const Label> labels() const { return labels_; }
  Label label(Vertex v) const { return labels_[static_cast<std::size_t>(v)]; }

  /// Local index of \p label, if present.
  std::optional<Vertex> index_of(Label label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<Vertex>(it - labels_.begin());
  }

  Vertex require_index(Label label) const {
    auto v = index_of(label);
    if (!v) throw GraphError("unknown vertex label " + std::to_string(label));
    return *v;
  }

  bool adjacent(Vertex a, Vertex b) const {
    return (row(a)[word(b)] >> bit(b)) & 1U;
  }

  bool adjacent_labels(Label a, Label b) const {
    auto ia = index_of(a);
    auto ib = index_of(b);
    return ia && ib && adjacent(*ia, *ib);
  }

  void add_edge(Vertex a, Vertex b) {
    check_vertex(a);
    check_vertex(b);
    if (a == b) throw GraphError("loop edge at vertex " + std::to_string(a));
    row_mut(a)[word(b)] |= mask(b);
    row_mut(b)[word(a)] |= mask(a);
  }

  int degree(Vertex v) const {
    int d = 0;
    for (std::uint64_t w : row(v)) d += std::popcount(w);
    return d;
  }

  std::vector<Vertex> neighbors(Vertex v) const {
    std::vector<Vertex> out;
    for (Vertex u = 0; u < n_; ++u) {
      if (adjacent(v, u)) out.push_back(u);
    }
    return out;
  }

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (Vertex v = 0; v < n_; ++v) twice += static_cast<std::size_t>(degree(v));
    return twice / 2;
  }

  /// Edges as local index pairs (a < b), lexicographic.
  std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex a = 0; a < n_; ++a) {
      for (Vertex b = a + 1; b < n_; ++b) {
        if (adjacent(a, b)) out.emplace_back(a, b);
      }
    }
    return out;
  }

  std::span<const std::uint64_t> row(Vertex v) const {
    return {rows_.data() + static_cast<std::size_t>(v) * words_, words_};
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  static std::size_t words_for(int n) {
    return n <= 0 ? 1 : (static_cast<std::size_t>(n) + 63) / 64;
  }
  static std::size_t word(Vertex v) { return static_cast<std::size_t>(v) / 64; }
  static unsigned bit(Vertex v) { return static_cast<unsigned>(v) % 64; }
  static std::uint64_t mask(Vertex v) { return std::uint64_t{1} << bit(v); }

  static std::vector<Label> identity_labels(int n) {
    std::vector<Label> out(static_cast<std::size_t>(std::max(n, 0)));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = i;
    return out;
  }

  void check_vertex(Vertex v) const {
    if (v < 0 || v >= n_) {
      throw GraphError("vertex index " + std::to_string(v) + " out of range for n = " +
                       std::to_string(n_));
    }
  }

  std::span<std::uint64_t> row_mut(Vertex v) {
    return {rows_.data() + static_cast<std::size_t>(v) * words_, words_};
  }

  int n_ = 0;
  std::size_t words_ = 1;
  std::vector<Label> labels_;
  std::vector<std::uint64_t> rows_;
};

/// uv adjacent in the result iff u != v and uv is not an edge of \p g.
inline Graph complement(const Graph& g) {
  const int n = g.order();
  Graph out(n, {g.labels().begin(), g.labels().end()});
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      if (!g.adjacent(a, b)) out.add_edge(a, b);
    }
  }
  return out;
}

/// Removes the vertices whose labels are in \p removed. Survivors keep their
/// labels and relative order.
inline Graph induced_delete(const Graph& g, std::span<const Label> removed) {
  std::vector<bool> drop(static_cast<std::size_t>(g.order()), false);
  for (Label l : removed) drop[static_cast<std::size_t>(g.require_index(l))] = true;

  std::vector<Vertex> keep;
  std::vector<Label> labels;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (!drop[static_cast<std::size_t>(v)]) {
      keep.push_back(v);
      labels.push_back(g.label(v));
    }
  }
  Graph out(static_cast<int>(keep.size()), std::move(labels));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (std::size_t j = i + 1; j < keep.size(); ++j) {
      if (g.adjacent(keep[i], keep[j])) {
        out.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
      }
    }
  }
  return out;
}

inline Graph induced_delete(const Graph& g, std::initializer_list<Label> removed) {
  return induced_delete(g, std::span<const Label>(removed.begin(), removed.size()));
}

/// Single-source BFS result. Unreachable vertices hold std::nullopt.
struct DistanceTable {
  Vertex source = 0;
  std::vector<std::optional<int>> dist;

  bool reachable(Vertex v) const { return dist[static_cast<std::size_t>(v)].has_value(); }
  int at(Vertex v) const { return dist[static_cast<std::size_t>(v)].value(); }
};

inline DistanceTable bfs_distances(const Graph& g, Vertex source) {
  DistanceTable t{source, std::vector<std::optional<int>>(static_cast<std::size_t>(g.order()))};
  std::queue<Vertex> frontier;
  t.dist[static_cast<std::size_t>(source)] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    Vertex x = frontier.front();
    frontier.pop();
    for (Vertex y = 0; y < g.order(); ++y) {
      if (g.adjacent(x, y) && !t.reachable(y)) {
        t.dist[static_cast<std::size_t>(y)] = t.at(x) + 1;
        frontier.push(y);
      }
    }
  }
  return t;
}

/// Diameter of a connected graph; std::nullopt when disconnected.
/// The single-vertex and empty graphs have diameter 0.
inline std::optional<int> diameter(const Graph& g) {
  int best = 0;
  for (Vertex v = 0; v < g.order(); ++v) {
    DistanceTable t = bfs_distances(g, v);
    for (Vertex u = 0; u < g.order(); ++u) {
      if (!t.reachable(u)) return std::nullopt;
      best = std::max(best, t.at(u));
    }
  }
  return best;
}

inline bool is_connected(const Graph& g) {
  if (g.order() == 0) return true;
  DistanceTable t = bfs_distances(g, 0);
  return std::all_of(t.dist.begin(), t.dist.end(), [](const auto& d) { return d.has_value(); });
}

inline int component_count(const Graph& g) {
  std::vector<bool> seen(static_cast<std::size_t>(g.order()), false);
  int count = 0;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (seen[static_cast<std::size_t>(v)]) continue;
    ++count;
    DistanceTable t = bfs_distances(g, v);
    for (Vertex u = 0; u < g.order(); ++u) {
      if (t.reachable(u)) seen[static_cast<std::size_t>(u)] = true;
    }
  }
  return count;
}

// Generators.

namespace detail {
inline void require_positive(int n) {
  if (n <= 0) throw GraphError("generators require n >= 1");
}
}  // namespace detail

inline Graph empty_graph(int n) {
  detail::require_positive(n);
  return Graph(n);
}

inline Graph path_graph(int n) {
  detail::require_positive(n);
  Graph g(n);
  for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

/// C_n for n >= 3; smaller n degrade to the path.
inline Graph cycle(int n) {
  Graph g = path_graph(n);
  if (n >= 3) g.add_edge(n - 1, 0);
  return g;
}

inline Graph complete(int n) {
  detail::require_positive(n);
  Graph g(n);
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) g.add_edge(a, b);
  }
  return g;
}

/// K_{1,n-1} with centre 0.
inline Graph star(int n) {
  detail::require_positive(n);
  Graph g(n);
  for (Vertex v = 1; v < n; ++v) g.add_edge(0, v);
  return g;
}

/// Disjoint union of \p a and \p b with every cross pair joined. Vertices of
/// \p b follow those of \p a; labels are renumbered 0..n-1.
inline Graph join(const Graph& a, const Graph& b) {
  const int na = a.order();
  Graph g(na + b.order());
  for (auto [x, y] : a.edges()) g.add_edge(x, y);
  for (auto [x, y] : b.edges()) g.add_edge(na + x, na + y);
  for (Vertex x = 0; x < na; ++x) {
    for (Vertex y = 0; y < b.order(); ++y) g.add_edge(x, na + y);
  }
  return g;
}

/// Same vertices relabelled through \p perm: local vertex i moves to index
/// perm[i] and takes label perm[i]. Used for label-invariance checks.
inline Graph permute(const Graph& g, std::span<const int> perm) {
  Graph out(g.order());
  for (auto [x, y] : g.edges()) {
    out.add_edge(perm[static_cast<std::size_t>(x)], perm[static_cast<std::size_t>(y)]);
  }
  return out;
}

/// xorshift64* generator.
///
///   state0 = splitmix64(seed), replaced by 0x9E3779B97F4A7C15 if zero
///   next():  x ^= x >> 12; x ^= x << 25; x ^= x >> 27;
///            return x * 0x2545F4914F6CDD1D
///   uniform(): (next() >> 11) * 2^-53, in [0, 1)
///
/// splitmix64(z): z += 0x9E3779B97F4A7C15;
///                z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
///                z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
///                return z ^ (z >> 31)
class XorShift64Star {
 public:
  explicit XorShift64Star(std::uint64_t seed) : state_(splitmix64(seed)) {
    if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
  }

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  static std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// G(n, p): one uniform() draw per pair (i, j), i < j, in lexicographic
/// order; the edge is present iff the draw is < p.
inline Graph random_gnp(int n, double p, std::uint64_t seed) {
  detail::require_positive(n);
  if (!(p >= 0.0 && p <= 1.0)) throw GraphError("edge probability must lie in [0, 1]");
  XorShift64Star rng(seed);
  Graph g(n);
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      if (rng.uniform() < p) g.add_edge(a, b);
    }
  }
  return g;
}

}  // namespace lapspread

#endif  // LAPSPREAD_GRAPH_HPP
