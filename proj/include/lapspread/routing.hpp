#ifndef LAPSPREAD_ROUTING_HPP
#define LAPSPREAD_ROUTING_HPP

/// \file routing.hpp
/// \brief Routings (one simple path per unordered vertex pair), their
///        validation, weighted congestion and the lambda_2 >= n / w check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lapspread/graph.hpp"
#include "lapspread/spectral.hpp"

namespace lapspread {

class RoutingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vertex labels along a path. Length is size() - 1.
using Path = std::vector<Label>;
/// Unordered pair stored as (smaller, larger).
using LabelPair = std::pair<Label, Label>;

inline LabelPair make_pair_key(Label a, Label b) { return a < b ? LabelPair{a, b} : LabelPair{b, a}; }

inline int path_length(const Path& p) { return static_cast<int>(p.size()) - 1; }

inline std::string to_string(const Path& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += '-';
    s += std::to_string(p[i]);
  }
  return s;
}

/// Map from unordered endpoint pair to a path. Paths are stored with the
/// smaller endpoint first, so P_xy and P_yx are the same object.
class Routing {
 public:
  using Map = std::map<LabelPair, Path>;

  /// Returns false (and leaves the routing unchanged) if the pair is taken.
  bool add(Path p) {
    if (p.empty()) throw RoutingError("empty path");
    if (p.front() > p.back()) std::reverse(p.begin(), p.end());
    LabelPair key{p.front(), p.back()};
    return paths_.emplace(key, std::move(p)).second;
  }

  const Path* find(Label a, Label b) const {
    auto it = paths_.find(make_pair_key(a, b));
    return it == paths_.end() ? nullptr : &it->second;
  }

  bool erase(Label a, Label b) { return paths_.erase(make_pair_key(a, b)) > 0; }

  std::size_t size() const { return paths_.size(); }
  bool empty() const { return paths_.empty(); }
  const Map& paths() const { return paths_; }
  auto begin() const { return paths_.begin(); }
  auto end() const { return paths_.end(); }

  /// Sum over paths of the squared length; equals the total congestion.
  std::int64_t squared_length_sum() const {
    std::int64_t s = 0;
    for (const auto& [key, p] : paths_) s += static_cast<std::int64_t>(path_length(p)) * path_length(p);
    return s;
  }

  friend bool operator==(const Routing&, const Routing&) = default;

 private:
  Map paths_;
};

struct RoutingValidation {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks totality, endpoints, simplicity and that consecutive vertices are
/// adjacent in \p g. Every violation is listed.
inline RoutingValidation validate_routing(const Graph& g, const Routing& r) {
  RoutingValidation out;
  auto& v = out.violations;

  for (const auto& [key, p] : r) {
    const std::string name = "path " + to_string(p);
    if (p.size() < 2) {
      v.push_back(name + ": fewer than two vertices");
      continue;
    }
    if (key != LabelPair{p.front(), p.back()}) v.push_back(name + ": endpoints do not match its pair");
    bool known = true;
    for (Label x : p) {
      if (!g.index_of(x)) {
        v.push_back(name + ": unknown vertex " + std::to_string(x));
        known = false;
      }
    }
    if (!known) continue;
    std::set<Label> seen(p.begin(), p.end());
    if (seen.size() != p.size()) v.push_back(name + ": repeated vertex");
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      if (!g.adjacent_labels(p[i], p[i + 1])) {
        v.push_back(name + ": " + std::to_string(p[i]) + "-" + std::to_string(p[i + 1]) +
                    " is not an edge");
      }
    }
  }

  const auto labels = g.labels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      if (!r.find(labels[i], labels[j])) {
        const LabelPair k = make_pair_key(labels[i], labels[j]);
        v.push_back("missing pair {" + std::to_string(k.first) + "," + std::to_string(k.second) + "}");
      }
    }
  }
  return out;
}

struct CongestionReport {
  /// Every edge of the host graph, keyed by its label pair; unused edges hold 0.
  std::map<LabelPair, std::int64_t> per_edge;
  std::int64_t w = 0;

  std::int64_t total() const {
    std::int64_t s = 0;
    for (const auto& [e, x] : per_edge) s += x;
    return s;
  }

  std::int64_t at(Label a, Label b) const {
    auto it = per_edge.find(make_pair_key(a, b));
    return it == per_edge.end() ? 0 : it->second;
  }
};

/// Per-edge sums of the lengths of the paths using each edge. Throws
/// RoutingError if \p r is not a valid routing of \p g.
inline CongestionReport weighted_congestion(const Graph& g, const Routing& r) {
  if (RoutingValidation val = validate_routing(g, r); !val.ok()) {
    throw RoutingError("invalid routing: " + val.violations.front());
  }
  CongestionReport out;
  for (auto [a, b] : g.edges()) out.per_edge[make_pair_key(g.label(a), g.label(b))] = 0;
  for (const auto& [key, p] : r) {
    const std::int64_t len = path_length(p);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) out.per_edge[make_pair_key(p[i], p[i + 1])] += len;
  }
  for (const auto& [e, x] : out.per_edge) out.w = std::max(out.w, x);
  return out;
}

inline constexpr double kSpectralSlack = 1e-8;

struct SpectralBoundReport {
  std::int64_t w = 0;
  double bound = 0.0;  // n / w
  double lambda2 = 0.0;
  bool ok = false;
};

/// A routing of weighted congestion w forces lambda_2 >= n / w.
inline SpectralBoundReport spectral_bound_check(const Graph& g, const Routing& r) {
  if (g.order() < 2) throw RoutingError("spectral bound check requires n >= 2");
  SpectralBoundReport out;
  out.w = weighted_congestion(g, r).w;
  out.bound = static_cast<double>(g.order()) / static_cast<double>(out.w);
  out.lambda2 = lambda2(g);
  out.ok = out.lambda2 >= out.bound - kSpectralSlack;
  return out;
}

/// Shortest path from \p a to \p b (labels). Each vertex keeps the parent
/// that discovered it first in an index-ordered BFS. Empty if unreachable.
inline Path bfs_path(const Graph& g, Label a, Label b) {
  const Vertex src = g.require_index(a);
  const Vertex dst = g.require_index(b);
  std::vector<Vertex> parent(static_cast<std::size_t>(g.order()), -1);
  std::vector<Vertex> frontier{src};
  parent[static_cast<std::size_t>(src)] = src;
  while (!frontier.empty() && parent[static_cast<std::size_t>(dst)] < 0) {
    std::vector<Vertex> next;
    for (Vertex x : frontier) {
      for (Vertex y = 0; y < g.order(); ++y) {
        if (g.adjacent(x, y) && parent[static_cast<std::size_t>(y)] < 0) {
          parent[static_cast<std::size_t>(y)] = x;
          next.push_back(y);
        }
      }
    }
    frontier = std::move(next);
  }
  if (parent[static_cast<std::size_t>(dst)] < 0) return {};
  Path p;
  for (Vertex x = dst; x != src; x = parent[static_cast<std::size_t>(x)]) p.push_back(g.label(x));
  p.push_back(a);
  std::reverse(p.begin(), p.end());
  return p;
}

/// BFS shortest paths for every pair; the graph must be connected.
inline Routing shortest_path_routing(const Graph& g) {
  Routing r;
  for (Vertex a = 0; a < g.order(); ++a) {
    for (Vertex b = a + 1; b < g.order(); ++b) {
      Path p = bfs_path(g, g.label(a), g.label(b));
      if (p.empty()) throw RoutingError("graph is disconnected");
      r.add(std::move(p));
    }
  }
  return r;
}

}  // namespace lapspread

#endif  // LAPSPREAD_ROUTING_HPP
