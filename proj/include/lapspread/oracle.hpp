#ifndef LAPSPREAD_ORACLE_HPP
#define LAPSPREAD_ORACLE_HPP

/// \file oracle.hpp
/// \brief Exact minimum weighted congestion on tiny graphs, and exhaustive
///        scans of small graph corpora.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "lapspread/constructor.hpp"
#include "lapspread/graph.hpp"
#include "lapspread/graph_io.hpp"
#include "lapspread/routing.hpp"
#include "lapspread/spectral.hpp"

namespace lapspread {

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kOracleMaxOrder = 6;

struct OptimalRouting {
  Routing routing;
  std::int64_t w = 0;
  std::int64_t nodes = 0;  // search nodes visited
};

/// Every simple path from \p a to \p b (local indices), ordered by length and
/// then lexicographically by vertex sequence.
inline std::vector<std::vector<Vertex>> simple_paths(const Graph& g, Vertex a, Vertex b) {
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> stack{a};
  std::vector<bool> used(static_cast<std::size_t>(g.order()), false);
  used[static_cast<std::size_t>(a)] = true;
  std::function<void()> dfs = [&] {
    const Vertex x = stack.back();
    if (x == b) {
      out.push_back(stack);
      return;
    }
    for (Vertex y = 0; y < g.order(); ++y) {
      if (!g.adjacent(x, y) || used[static_cast<std::size_t>(y)]) continue;
      used[static_cast<std::size_t>(y)] = true;
      stack.push_back(y);
      dfs();
      stack.pop_back();
      used[static_cast<std::size_t>(y)] = false;
    }
  };
  dfs();
  std::stable_sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
    return l.size() != r.size() ? l.size() < r.size() : l < r;
  });
  return out;
}

/// Minimum weighted congestion over all routings by simple paths, by
/// branch and bound. Pairs are assigned in decreasing distance order; each
/// pair tries its paths shortest first. A partial assignment is cut when an
/// edge load, or the average-load bound (current total plus the squared
/// distances still to route, over |E|), reaches the incumbent.
inline OptimalRouting min_congestion_routing(const Graph& g, int max_order = kOracleMaxOrder) {
  const int n = g.order();
  if (n > max_order) throw OracleError("oracle is limited to n <= " + std::to_string(max_order));
  if (!is_connected(g)) throw OracleError("oracle requires a connected graph");

  OptimalRouting best;
  if (n < 2) return best;

  std::vector<int> edge_id(static_cast<std::size_t>(n * n), -1);
  int m = 0;
  for (auto [a, b] : g.edges()) {
    edge_id[static_cast<std::size_t>(a * n + b)] = m;
    edge_id[static_cast<std::size_t>(b * n + a)] = m;
    ++m;
  }

  struct Candidate {
    std::vector<int> edges;
    std::int64_t length;
  };
  struct PairWork {
    Vertex a, b;
    int dist;
    std::vector<std::vector<Vertex>> paths;
    std::vector<Candidate> candidates;
  };
  std::vector<PairWork> pairs;
  for (Vertex a = 0; a < n; ++a) {
    DistanceTable t = bfs_distances(g, a);
    for (Vertex b = a + 1; b < n; ++b) {
      PairWork w{a, b, t.at(b), simple_paths(g, a, b), {}};
      for (const auto& p : w.paths) {
        Candidate c{{}, static_cast<std::int64_t>(p.size()) - 1};
        for (std::size_t i = 0; i + 1 < p.size(); ++i) {
          c.edges.push_back(edge_id[static_cast<std::size_t>(p[i] * n + p[i + 1])]);
        }
        w.candidates.push_back(std::move(c));
      }
      pairs.push_back(std::move(w));
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const PairWork& l, const PairWork& r) {
    return std::tuple(-l.dist, l.a, l.b) < std::tuple(-r.dist, r.a, r.b);
  });

  // remaining_sq[i]: sum of squared distances of pairs i.. (a lower bound on
  // the load they add).
  std::vector<std::int64_t> remaining_sq(pairs.size() + 1, 0);
  for (std::size_t i = pairs.size(); i-- > 0;) {
    remaining_sq[i] = remaining_sq[i + 1] + static_cast<std::int64_t>(pairs[i].dist) * pairs[i].dist;
  }

  // Incumbent: all first (shortest, lexicographically least) candidates.
  std::vector<std::size_t> choice(pairs.size(), 0);
  std::vector<std::size_t> best_choice = choice;
  std::vector<std::int64_t> load(static_cast<std::size_t>(m), 0);
  for (const auto& p : pairs) {
    for (int e : p.candidates[0].edges) load[static_cast<std::size_t>(e)] += p.candidates[0].length;
  }
  std::int64_t incumbent = *std::max_element(load.begin(), load.end());
  std::fill(load.begin(), load.end(), 0);

  std::int64_t total = 0;
  std::int64_t nodes = 0;
  std::function<void(std::size_t, std::int64_t)> search = [&](std::size_t i, std::int64_t current_max) {
    ++nodes;
    if (i == pairs.size()) {
      if (current_max < incumbent) {
        incumbent = current_max;
        best_choice = choice;
      }
      return;
    }
    const std::int64_t lower = (total + remaining_sq[i] + m - 1) / m;
    if (std::max(current_max, lower) >= incumbent) return;
    for (std::size_t k = 0; k < pairs[i].candidates.size(); ++k) {
      const Candidate& c = pairs[i].candidates[k];
      std::int64_t next_max = current_max;
      bool ok = true;
      for (int e : c.edges) {
        const std::int64_t v = load[static_cast<std::size_t>(e)] + c.length;
        if (v >= incumbent) {
          ok = false;
          break;
        }
        next_max = std::max(next_max, v);
      }
      if (!ok) continue;
      for (int e : c.edges) load[static_cast<std::size_t>(e)] += c.length;
      total += c.length * c.length;
      choice[i] = k;
      search(i + 1, next_max);
      total -= c.length * c.length;
      for (int e : c.edges) load[static_cast<std::size_t>(e)] -= c.length;
    }
  };
  search(0, 0);

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    Path p;
    for (Vertex x : pairs[i].paths[best_choice[i]]) p.push_back(g.label(x));
    best.routing.add(std::move(p));
  }
  best.w = incumbent;
  best.nodes = nodes;
  return best;
}

/// Graph on n vertices whose graph6 bit string, read as a big-endian
/// integer of n(n-1)/2 bits, is \p bits. Ascending \p bits gives ascending
/// graph6 ids.
inline Graph graph_from_upper_bits(int n, std::uint64_t bits) {
  const int m = n * (n - 1) / 2;
  Graph g(n);
  int index = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i, ++index) {
      if ((bits >> (m - 1 - index)) & 1U) g.add_edge(i, j);
    }
  }
  return g;
}

/// One row per scanned graph.
struct ScanRecord {
  std::string id;  // graph6
  int n = 0;
  double lambda2_graph = 0.0;
  double lambda2_complement = 0.0;
  double sum = 0.0;
  double max = 0.0;
  Side side = Side::graph;
  std::int64_t w = 0;
  bool certified = false;
  bool routing_valid = false;
  bool bound_ok = false;          // w <= floor(5n/2)
  bool theorem2 = false;          // lambda2(side) >= n / w - 1e-8
  bool theorem1 = false;          // max >= 2/5 - 1e-8
  bool increment_law_ok = false;  // every extension matched the tables
  int extensions = 0;
  double complement_deviation = 0.0;
  bool complement_identity_ok = false;
  bool components_ok = false;  // zero multiplicity == component count
  std::optional<std::int64_t> w_star;
};

struct ScanOptions {
  /// Compute the optimal congestion for connected graphs up to this order
  /// (0 disables the oracle).
  int oracle_max_n = 0;
  int jobs = 1;
  ConstructOptions construct;
};

inline constexpr double kTheoremOneBound = 0.4;

inline ScanRecord scan_graph(const Graph& g, const ScanOptions& options = {}) {
  if (g.order() < 2) throw OracleError("scans need n >= 2");
  ScanRecord r;
  r.id = encode_graph6(g);
  r.n = g.order();

  const Graph gc = complement(g);
  const Spectrum sg = laplacian_spectrum(g);
  const Spectrum sc = laplacian_spectrum(gc);
  r.lambda2_graph = sg.values[1];
  r.lambda2_complement = sc.values[1];
  r.sum = r.lambda2_graph + r.lambda2_complement;
  r.max = std::max(r.lambda2_graph, r.lambda2_complement);
  r.theorem1 = r.max >= kTheoremOneBound - kSpectralSlack;
  r.components_ok = zero_multiplicity(sg) == component_count(g) && zero_multiplicity(sc) == component_count(gc);

  const double n = static_cast<double>(g.order());
  std::vector<double> predicted{0.0};
  for (std::size_t k = sg.values.size() - 1; k >= 1; --k) predicted.push_back(n - sg.values[k]);
  std::sort(predicted.begin(), predicted.end());
  for (std::size_t k = 0; k < predicted.size(); ++k) {
    r.complement_deviation = std::max(r.complement_deviation, std::abs(predicted[k] - sc.values[k]));
  }
  r.complement_identity_ok = r.complement_deviation <= kComplementIdentityTolerance;

  const Certificate c = construct(g, options.construct);
  const Graph& side = c.side == Side::graph ? g : gc;
  r.side = c.side;
  r.w = c.congestion.w;
  r.certified = c.certified;
  r.routing_valid = validate_routing(side, c.routing).ok();
  r.bound_ok = c.bound_ok;
  const double l2_side = c.side == Side::graph ? r.lambda2_graph : r.lambda2_complement;
  r.theorem2 = l2_side >= n / static_cast<double>(r.w) - kSpectralSlack;
  r.increment_law_ok = c.increment_laws_ok();
  r.extensions = static_cast<int>(std::count_if(c.trace.begin(), c.trace.end(), [](const TraceLevel& t) {
    return t.kind == LevelCase::extend_graph || t.kind == LevelCase::extend_complement;
  }));

  if (g.order() <= options.oracle_max_n && is_connected(g)) {
    r.w_star = min_congestion_routing(g, options.oracle_max_n).w;
  }
  return r;
}

/// Streaming summary of a scan.
struct ScanAggregate {
  static constexpr std::size_t kMaxIds = 16;
  static constexpr double kTieTolerance = 1e-9;

  std::int64_t graphs = 0;
  double min_sum = std::numeric_limits<double>::infinity();
  std::int64_t min_sum_count = 0;
  std::vector<std::string> min_sum_ids;
  double min_max = std::numeric_limits<double>::infinity();
  std::int64_t min_max_count = 0;
  std::vector<std::string> min_max_ids;
  std::int64_t uncertified = 0;
  std::vector<std::string> uncertified_ids;
  double max_bound_ratio = 0.0;  // w / floor(5n/2)
  std::string max_bound_ratio_id;
  double max_w_over_n = 0.0;
  std::int64_t extensions = 0;

  std::int64_t conjecture_violations = 0;  // sum < 1 - 1e-8
  std::int64_t theorem1_failures = 0;
  std::int64_t theorem2_failures = 0;
  std::int64_t bound_failures = 0;
  std::int64_t routing_failures = 0;
  std::int64_t increment_law_failures = 0;
  std::int64_t complement_identity_failures = 0;
  std::int64_t component_failures = 0;
  std::vector<std::string> failure_ids;  // first few graphs failing any hard check

  std::int64_t oracle_checked = 0;
  std::int64_t oracle_failures = 0;  // n / w* > lambda2 + 1e-8, or w < w* on the graph side

  void add(const ScanRecord& r) {
    ++graphs;
    track_min(r.sum, r.id, min_sum, min_sum_count, min_sum_ids);
    track_min(r.max, r.id, min_max, min_max_count, min_max_ids);
    if (!r.certified) {
      ++uncertified;
      if (uncertified_ids.size() < 256) uncertified_ids.push_back(r.id);
    }
    const double ratio = static_cast<double>(r.w) / static_cast<double>(5 * r.n / 2);
    if (ratio > max_bound_ratio) {
      max_bound_ratio = ratio;
      max_bound_ratio_id = r.id;
    }
    max_w_over_n = std::max(max_w_over_n, static_cast<double>(r.w) / r.n);
    extensions += r.extensions;

    bool failed = false;
    auto count = [&](bool ok, std::int64_t& counter) {
      if (!ok) {
        ++counter;
        failed = true;
      }
    };
    count(r.sum >= 1.0 - kSpectralSlack, conjecture_violations);
    count(r.theorem1, theorem1_failures);
    count(r.theorem2, theorem2_failures);
    count(r.bound_ok, bound_failures);
    count(r.routing_valid, routing_failures);
    count(r.increment_law_ok, increment_law_failures);
    count(r.complement_identity_ok, complement_identity_failures);
    count(r.components_ok, component_failures);
    if (r.w_star) {
      ++oracle_checked;
      const double l2 = r.lambda2_graph;
      const bool ok = static_cast<double>(r.n) / static_cast<double>(*r.w_star) <= l2 + kSpectralSlack &&
                      (r.side != Side::graph || r.w >= *r.w_star);
      count(ok, oracle_failures);
    }
    if (failed && failure_ids.size() < kMaxIds) failure_ids.push_back(r.id);
  }

  bool hard_checks_pass() const {
    return uncertified == 0 && conjecture_violations == 0 && theorem1_failures == 0 && theorem2_failures == 0 &&
           bound_failures == 0 && routing_failures == 0 && increment_law_failures == 0 &&
           complement_identity_failures == 0 && component_failures == 0 && oracle_failures == 0;
  }

 private:
  static void track_min(double value, const std::string& id, double& best, std::int64_t& count,
                        std::vector<std::string>& ids) {
    if (value < best - kTieTolerance) {
      best = value;
      count = 0;
      ids.clear();
    } else {
      best = std::min(best, value);
    }
    if (std::abs(value - best) <= kTieTolerance) {
      ++count;
      if (ids.size() < kMaxIds) ids.push_back(id);
    }
  }
};

using ScanSink = std::function<void(const ScanRecord&)>;

/// Scans \p count graphs produced by \p make(i), i = 0..count-1, on up to
/// options.jobs threads. Records reach \p sink in index order.
inline void scan_indexed(std::uint64_t count, const std::function<Graph(std::uint64_t)>& make,
                         const ScanOptions& options, const ScanSink& sink) {
  const std::uint64_t jobs = static_cast<std::uint64_t>(std::max(1, options.jobs));
  const std::uint64_t block = 4096;
  std::vector<ScanRecord> records;
  for (std::uint64_t start = 0; start < count; start += block) {
    const std::uint64_t len = std::min(block, count - start);
    records.assign(len, {});
    auto work = [&](std::uint64_t worker) {
      for (std::uint64_t i = worker; i < len; i += jobs) records[i] = scan_graph(make(start + i), options);
    };
    if (jobs == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (std::uint64_t t = 0; t < jobs; ++t) pool.emplace_back(work, t);
      for (auto& t : pool) t.join();
    }
    for (const auto& r : records) sink(r);
  }
}

inline constexpr int kBuiltinScanMaxOrder = 7;

/// All labelled graphs with 2 <= n <= n_max, by n and then by graph6 id.
inline ScanAggregate exhaustive_scan(int n_max, const ScanOptions& options = {}, const ScanSink& sink = {},
                                     int n_min = 2) {
  if (n_max > kBuiltinScanMaxOrder) {
    throw OracleError("built-in enumeration stops at n = 7; pass a graph6 corpus for larger orders");
  }
  ScanAggregate agg;
  for (int n = std::max(2, n_min); n <= n_max; ++n) {
    const int m = n * (n - 1) / 2;
    scan_indexed(
        std::uint64_t{1} << m, [n](std::uint64_t bits) { return graph_from_upper_bits(n, bits); }, options,
        [&](const ScanRecord& r) {
          agg.add(r);
          if (sink) sink(r);
        });
  }
  return agg;
}

/// Scans an explicit corpus in the given order.
inline ScanAggregate corpus_scan(const std::vector<Graph>& corpus, const ScanOptions& options = {},
                                 const ScanSink& sink = {}) {
  ScanAggregate agg;
  scan_indexed(
      corpus.size(), [&](std::uint64_t i) { return corpus[i]; }, options,
      [&](const ScanRecord& r) {
        agg.add(r);
        if (sink) sink(r);
      });
  return agg;
}

}  // namespace lapspread

#endif  // LAPSPREAD_ORACLE_HPP
