#ifndef LAPSPREAD_CERTIFICATE_HPP
#define LAPSPREAD_CERTIFICATE_HPP

/// \file certificate.hpp
/// \brief JSON certificate documents: building them from a construction,
///        parsing, and independent re-verification.
///
/// Schema (version 1), keys in this order:
///   schema_version   integer, 1
///   graph            {"graph6": string, "n": integer}
///   side             "graph" | "complement"
///   paths            [[label, ...], ...]   smaller endpoint first, sorted
///   per_edge_congestion  [[a, b, w], ...]  a < b, every edge of the side
///   w                integer
///   bound            n / w, 12 significant digits
///   lambda2_side, lambda2_graph, lambda2_complement   12 significant digits
///   certified        boolean
///   search           {"cap_hits": integer, "dead_ends": integer}
///   trace            [{"n", "case", ["u", "v", "vp", "witness", "x_size",
///                      "widened", "backtracks"], "increment_law"
///                      [, "increment_mismatches"]}, ...]
///   checks           {"routing_valid", "congestion_bound", "theorem2",
///                     "theorem1"} booleans

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "lapspread/constructor.hpp"
#include "lapspread/graph.hpp"
#include "lapspread/graph_io.hpp"
#include "lapspread/routing.hpp"
#include "lapspread/spectral.hpp"

namespace lapspread {

inline constexpr int kCertificateSchemaVersion = 1;

class DocumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Value rounded to 12 significant digits; magnitudes below 1e-12 become 0.
inline double round_decimal(double x) {
  if (std::abs(x) < 1e-12) return 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::stod(buf);
}

inline std::string format_decimal(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", round_decimal(x));
  return buf;
}

struct CertificateChecks {
  bool routing_valid = false;
  bool congestion_bound = false;  // w <= floor(5n/2)
  bool theorem2 = false;          // lambda2(side) >= n / w - 1e-8
  bool theorem1 = false;          // max(lambda2(G), lambda2(complement)) >= 2/5 - 1e-8

  bool all() const { return routing_valid && congestion_bound && theorem2 && theorem1; }
  friend bool operator==(const CertificateChecks&, const CertificateChecks&) = default;
};

struct CertificateDocument {
  int schema_version = kCertificateSchemaVersion;
  std::string graph6;
  int n = 0;
  Side side = Side::graph;
  std::vector<Path> paths;
  std::vector<std::tuple<Label, Label, std::int64_t>> per_edge;
  std::int64_t w = 0;
  double bound = 0.0;
  double lambda2_side = 0.0;
  double lambda2_graph = 0.0;
  double lambda2_complement = 0.0;
  bool certified = false;
  int cap_hits = 0;
  int dead_ends = 0;
  std::vector<TraceLevel> trace;
  CertificateChecks checks;
};

namespace detail {

inline CertificateChecks compute_checks(const Graph& g, Side side, const Routing& routing, double l2_graph,
                                        double l2_complement) {
  CertificateChecks c;
  const Graph host = side_graph(g, side);
  c.routing_valid = validate_routing(host, routing).ok();
  const double l2_side = side == Side::graph ? l2_graph : l2_complement;
  c.theorem1 = std::max(l2_graph, l2_complement) >= 0.4 - kSpectralSlack;
  if (c.routing_valid) {
    const std::int64_t w = weighted_congestion(host, routing).w;
    c.congestion_bound = within_five_halves(w, g.order());
    c.theorem2 = l2_side >= static_cast<double>(g.order()) / static_cast<double>(w) - kSpectralSlack;
  }
  return c;
}

}  // namespace detail

/// Fills a document from a construction on \p g (n >= 2).
inline CertificateDocument make_document(const Graph& g, const Certificate& c) {
  if (g.order() < 2) throw DocumentError("certificates need n >= 2");
  CertificateDocument d;
  d.graph6 = encode_graph6(g);
  d.n = g.order();
  d.side = c.side;
  for (const auto& [key, p] : c.routing) d.paths.push_back(p);
  for (const auto& [e, x] : c.congestion.per_edge) d.per_edge.emplace_back(e.first, e.second, x);
  d.w = c.congestion.w;
  d.bound = round_decimal(static_cast<double>(d.n) / static_cast<double>(d.w));
  const double l2g = lambda2(g);
  const double l2c = lambda2(complement(g));
  d.lambda2_graph = round_decimal(l2g);
  d.lambda2_complement = round_decimal(l2c);
  d.lambda2_side = c.side == Side::graph ? d.lambda2_graph : d.lambda2_complement;
  d.certified = c.certified;
  d.cap_hits = c.cap_hits;
  d.dead_ends = c.dead_ends;
  d.trace = c.trace;
  d.checks = detail::compute_checks(g, c.side, c.routing, l2g, l2c);
  return d;
}

inline nlohmann::ordered_json to_json(const CertificateDocument& d) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema_version"] = d.schema_version;
  j["graph"] = {{"graph6", d.graph6}, {"n", d.n}};
  j["side"] = std::string(side_name(d.side));
  j["paths"] = d.paths;
  ordered_json edges = ordered_json::array();
  for (const auto& [a, b, x] : d.per_edge) edges.push_back({a, b, x});
  j["per_edge_congestion"] = std::move(edges);
  j["w"] = d.w;
  j["bound"] = round_decimal(d.bound);
  j["lambda2_side"] = round_decimal(d.lambda2_side);
  j["lambda2_graph"] = round_decimal(d.lambda2_graph);
  j["lambda2_complement"] = round_decimal(d.lambda2_complement);
  j["certified"] = d.certified;
  j["search"] = {{"cap_hits", d.cap_hits}, {"dead_ends", d.dead_ends}};
  ordered_json trace = ordered_json::array();
  for (const TraceLevel& t : d.trace) {
    ordered_json level;
    level["n"] = t.n;
    level["case"] = std::string(case_name(t.kind));
    if (t.roles) {
      level["u"] = (*t.roles)[0];
      level["v"] = (*t.roles)[1];
      level["vp"] = (*t.roles)[2];
    }
    if (t.witness) level["witness"] = *t.witness;
    if (t.roles) {
      level["x_size"] = t.x_size;
      level["widened"] = t.widened;
      level["backtracks"] = t.backtracks;
    }
    level["increment_law"] = t.increment_law_ok;
    if (!t.increment_mismatches.empty()) level["increment_mismatches"] = t.increment_mismatches;
    trace.push_back(std::move(level));
  }
  j["trace"] = std::move(trace);
  j["checks"] = {{"routing_valid", d.checks.routing_valid},
                 {"congestion_bound", d.checks.congestion_bound},
                 {"theorem2", d.checks.theorem2},
                 {"theorem1", d.checks.theorem1}};
  return j;
}

inline std::string serialize(const CertificateDocument& d) { return to_json(d).dump(2) + "\n"; }

inline CertificateDocument parse_document(const std::string& text) {
  using nlohmann::json;
  CertificateDocument d;
  try {
    const json j = json::parse(text);
    d.schema_version = j.at("schema_version").get<int>();
    if (d.schema_version != kCertificateSchemaVersion) {
      throw DocumentError("unsupported schema version " + std::to_string(d.schema_version));
    }
    d.graph6 = j.at("graph").at("graph6").get<std::string>();
    d.n = j.at("graph").at("n").get<int>();
    const auto side = j.at("side").get<std::string>();
    if (side == "graph") {
      d.side = Side::graph;
    } else if (side == "complement") {
      d.side = Side::complement;
    } else {
      throw DocumentError("side must be \"graph\" or \"complement\"");
    }
    d.paths = j.at("paths").get<std::vector<Path>>();
    for (const auto& e : j.at("per_edge_congestion")) {
      if (!e.is_array() || e.size() != 3) throw DocumentError("per_edge_congestion entries must be [a, b, w]");
      d.per_edge.emplace_back(e[0].get<Label>(), e[1].get<Label>(), e[2].get<std::int64_t>());
    }
    d.w = j.at("w").get<std::int64_t>();
    d.bound = j.at("bound").get<double>();
    d.lambda2_side = j.at("lambda2_side").get<double>();
    d.lambda2_graph = j.at("lambda2_graph").get<double>();
    d.lambda2_complement = j.at("lambda2_complement").get<double>();
    d.certified = j.at("certified").get<bool>();
    d.cap_hits = j.at("search").at("cap_hits").get<int>();
    d.dead_ends = j.at("search").at("dead_ends").get<int>();
    for (const auto& level : j.at("trace")) {
      TraceLevel t;
      t.n = level.at("n").get<int>();
      const auto name = level.at("case").get<std::string>();
      bool known = false;
      for (LevelCase c : {LevelCase::base_graph, LevelCase::base_complement, LevelCase::extend_graph,
                          LevelCase::extend_complement, LevelCase::fallback}) {
        if (case_name(c) == name) {
          t.kind = c;
          known = true;
        }
      }
      if (!known) throw DocumentError("unknown trace case '" + name + "'");
      if (level.contains("u")) {
        t.roles = std::array<Label, 3>{level.at("u").get<Label>(), level.at("v").get<Label>(),
                                       level.at("vp").get<Label>()};
        t.x_size = level.at("x_size").get<int>();
        t.widened = level.at("widened").get<bool>();
        t.backtracks = level.at("backtracks").get<int>();
      }
      if (level.contains("witness")) t.witness = level.at("witness").get<std::array<Label, 4>>();
      t.increment_law_ok = level.at("increment_law").get<bool>();
      if (level.contains("increment_mismatches")) {
        t.increment_mismatches = level.at("increment_mismatches").get<std::vector<std::string>>();
      }
      d.trace.push_back(std::move(t));
    }
    const auto& checks = j.at("checks");
    d.checks.routing_valid = checks.at("routing_valid").get<bool>();
    d.checks.congestion_bound = checks.at("congestion_bound").get<bool>();
    d.checks.theorem2 = checks.at("theorem2").get<bool>();
    d.checks.theorem1 = checks.at("theorem1").get<bool>();
  } catch (const json::exception& e) {
    throw DocumentError(std::string("malformed certificate: ") + e.what());
  }
  return d;
}

struct VerifyReport {
  std::vector<std::string> failures;
  CertificateChecks recomputed;
  bool ok() const { return failures.empty(); }
};

/// Rebuilds everything the document claims from \p g alone and lists each
/// disagreement or failed check.
inline VerifyReport verify_document(const CertificateDocument& d, const Graph& g) {
  VerifyReport r;
  auto fail = [&](std::string s) { r.failures.push_back(std::move(s)); };

  if (g.order() < 2) {
    fail("graph has fewer than two vertices");
    return r;
  }
  if (encode_graph6(g) != d.graph6 || g.order() != d.n) {
    fail("mismatched graph: certificate is for " + d.graph6 + ", input is " + encode_graph6(g));
    return r;
  }

  Routing routing;
  for (const Path& p : d.paths) {
    if (p.empty()) {
      fail("empty path");
      continue;
    }
    if (!routing.add(p)) fail("duplicate pair for path " + to_string(p));
  }
  const Graph host = side_graph(g, d.side);
  const RoutingValidation val = validate_routing(host, routing);
  for (const auto& v : val.violations) fail("invalid routing: " + v);

  const double l2g = lambda2(g);
  const double l2c = lambda2(complement(g));
  auto close = [](double claimed, double actual) {
    return std::abs(claimed - round_decimal(actual)) <= 1e-9 * std::max(1.0, std::abs(actual));
  };
  if (!close(d.lambda2_graph, l2g)) fail("lambda2 mismatch (graph): " + format_decimal(l2g));
  if (!close(d.lambda2_complement, l2c)) fail("lambda2 mismatch (complement): " + format_decimal(l2c));
  if (!close(d.lambda2_side, d.side == Side::graph ? l2g : l2c)) fail("lambda2 mismatch (side)");

  if (val.ok()) {
    const CongestionReport c = weighted_congestion(host, routing);
    std::vector<std::tuple<Label, Label, std::int64_t>> edges;
    for (const auto& [e, x] : c.per_edge) edges.emplace_back(e.first, e.second, x);
    if (edges != d.per_edge) fail("congestion mismatch: per-edge values differ");
    if (c.w != d.w) fail("congestion mismatch: w is " + std::to_string(c.w) + ", certificate says " + std::to_string(d.w));
    if (c.w > 0 && !close(d.bound, static_cast<double>(d.n) / static_cast<double>(c.w))) {
      fail("bound mismatch: n / w is " + format_decimal(static_cast<double>(d.n) / static_cast<double>(c.w)));
    }
  }

  r.recomputed = detail::compute_checks(g, d.side, routing, l2g, l2c);
  const std::pair<const char*, bool> checks[] = {{"routing_valid", r.recomputed.routing_valid},
                                                 {"congestion_bound", r.recomputed.congestion_bound},
                                                 {"theorem2", r.recomputed.theorem2},
                                                 {"theorem1", r.recomputed.theorem1}};
  for (const auto& [name, ok] : checks) {
    if (!ok) fail(std::string("check failed: ") + name);
  }
  if (r.recomputed != d.checks) fail("stated checks differ from recomputed checks");
  return r;
}

}  // namespace lapspread

#endif  // LAPSPREAD_CERTIFICATE_HPP
