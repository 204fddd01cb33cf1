// lapspread command-line tool: route, verify, spectrum, scan, oracle.
//
// Exit status: 0 success / all checks pass, 1 a check failed, 2 usage,
// parse or I/O error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lapspread/certificate.hpp"
#include "lapspread/constructor.hpp"
#include "lapspread/graph.hpp"
#include "lapspread/graph_io.hpp"
#include "lapspread/oracle.hpp"
#include "lapspread/spectral.hpp"

namespace {

using namespace lapspread;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_all(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

/// First graph in the input. graph6 files may hold several lines; only the
/// first non-blank one is used.
Graph read_graph(const std::string& path, const std::string& format) {
  const std::string text = read_all(path);
  if (format == "edgelist") return parse_edge_list(text);
  std::istringstream in(text);
  std::vector<Graph> graphs = read_graph6_corpus(in);
  if (graphs.empty()) throw UsageError("no graph in " + path);
  return graphs.front();
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw UsageError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct GraphInput {
  std::string in = "-";
  std::string format = "graph6";

  void add(CLI::App* cmd) {
    cmd->add_option("--in", in, "graph file, '-' for stdin")->capture_default_str();
    cmd->add_option("--format", format, "input format")
        ->check(CLI::IsMember({"graph6", "edgelist"}))
        ->capture_default_str();
  }
};

int cmd_route(const GraphInput& input, const std::string& out, int attempt_cap) {
  const Graph g = read_graph(input.in, input.format);
  if (g.order() < 2) throw UsageError("route needs a graph with at least two vertices");
  ConstructOptions options;
  options.attempt_cap = attempt_cap;
  const CertificateDocument doc = make_document(g, construct(g, options));
  Output o(out);
  o.stream() << serialize(doc);
  if (!doc.checks.all()) {
    std::cerr << "route: checks failed for " << doc.graph6 << "\n";
    return kExitCheckFailed;
  }
  if (!doc.certified) std::cerr << "route: uncertified fallback routing for " << doc.graph6 << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& cert_path, const GraphInput& input) {
  const CertificateDocument doc = parse_document(read_all(cert_path));
  const Graph g = read_graph(input.in, input.format);
  const VerifyReport r = verify_document(doc, g);
  if (r.ok()) {
    std::cout << "pass " << doc.graph6 << " side=" << side_name(doc.side) << " w=" << doc.w
              << " bound=" << format_decimal(doc.bound) << "\n";
    return kExitOk;
  }
  std::cout << "fail " << doc.graph6 << "\n";
  for (const auto& f : r.failures) std::cout << "  " << f << "\n";
  return kExitCheckFailed;
}

int cmd_spectrum(const GraphInput& input, const std::string& out) {
  const Graph g = read_graph(input.in, input.format);
  Output o(out);
  auto& s = o.stream();
  const Spectrum sg = laplacian_spectrum(g);
  s << "# laplacian spectrum of " << encode_graph6(g) << " (n = " << g.order() << ")\n";
  for (double x : sg.values) s << format_decimal(x) << "\n";
  if (g.order() >= 2) {
    const Spectrum sc = laplacian_spectrum(complement(g));
    s << "# complement\n";
    for (double x : sc.values) s << format_decimal(x) << "\n";
    s << "lambda2 " << format_decimal(sg.values[1]) << "\n";
    s << "lambda2_complement " << format_decimal(sc.values[1]) << "\n";
    s << "spread " << format_decimal(sg.values.back() - sg.values[1]) << "\n";
  }
  return kExitOk;
}

void write_record(std::ostream& s, const ScanRecord& r) {
  s << r.id << '\t' << r.n << '\t' << format_decimal(r.lambda2_graph) << '\t'
    << format_decimal(r.lambda2_complement) << '\t' << format_decimal(r.sum) << '\t' << format_decimal(r.max)
    << '\t' << side_name(r.side) << '\t' << r.w << '\t' << (r.certified ? "certified" : "fallback") << '\t'
    << (r.w_star ? std::to_string(*r.w_star) : "-") << '\n';
}

void write_ids(std::ostream& s, const char* key, const std::vector<std::string>& ids) {
  s << "# " << key;
  for (const auto& id : ids) s << ' ' << id;
  s << '\n';
}

void write_aggregate(std::ostream& s, const ScanAggregate& a) {
  s << "# aggregate\n";
  s << "# graphs " << a.graphs << '\n';
  s << "# min_sum " << format_decimal(a.min_sum) << '\n';
  s << "# min_sum_count " << a.min_sum_count << '\n';
  write_ids(s, "min_sum_ids", a.min_sum_ids);
  s << "# min_max " << format_decimal(a.min_max) << '\n';
  s << "# min_max_count " << a.min_max_count << '\n';
  write_ids(s, "min_max_ids", a.min_max_ids);
  s << "# uncertified " << a.uncertified << '\n';
  write_ids(s, "uncertified_ids", a.uncertified_ids);
  s << "# max_w_over_floor_5n_2 " << format_decimal(a.max_bound_ratio) << ' ' << a.max_bound_ratio_id << '\n';
  s << "# max_w_over_n " << format_decimal(a.max_w_over_n) << '\n';
  s << "# extensions " << a.extensions << '\n';
  s << "# conjecture_violations " << a.conjecture_violations << '\n';
  s << "# theorem1_failures " << a.theorem1_failures << '\n';
  s << "# theorem2_failures " << a.theorem2_failures << '\n';
  s << "# bound_failures " << a.bound_failures << '\n';
  s << "# routing_failures " << a.routing_failures << '\n';
  s << "# increment_law_failures " << a.increment_law_failures << '\n';
  s << "# complement_identity_failures " << a.complement_identity_failures << '\n';
  s << "# component_failures " << a.component_failures << '\n';
  s << "# oracle_checked " << a.oracle_checked << '\n';
  s << "# oracle_failures " << a.oracle_failures << '\n';
  write_ids(s, "failure_ids", a.failure_ids);
}

struct ScanFlags {
  int n = 0;
  std::string corpus;
  std::uint64_t sample = 0;
  double p = 0.5;
  std::uint64_t seed = 1;
  bool with_oracle = false;
  int max_n = kOracleMaxOrder;
  int jobs = 1;
  std::string out;
};

int cmd_scan(const ScanFlags& f) {
  ScanOptions options;
  options.jobs = f.jobs;
  options.oracle_max_n = f.with_oracle ? f.max_n : 0;
  Output o(f.out);
  auto& s = o.stream();
  s << "# graph6\tn\tlambda2\tlambda2_complement\tsum\tmax\tside\tw\tstatus\tw_star\n";
  auto sink = [&](const ScanRecord& r) { write_record(s, r); };

  ScanAggregate agg;
  if (!f.corpus.empty()) {
    std::istringstream in(read_all(f.corpus));
    agg = corpus_scan(read_graph6_corpus(in), options, sink);
  } else if (f.sample > 0) {
    if (f.n < 2) throw UsageError("--sample needs --n >= 2");
    std::vector<Graph> corpus;
    for (std::uint64_t i = 0; i < f.sample; ++i) corpus.push_back(random_gnp(f.n, f.p, f.seed + i));
    agg = corpus_scan(corpus, options, sink);
  } else {
    if (f.n < 2) throw UsageError("scan needs --n >= 2, --corpus or --sample");
    agg = exhaustive_scan(f.n, options, sink);
  }
  write_aggregate(s, agg);
  return agg.hard_checks_pass() ? kExitOk : kExitCheckFailed;
}

int cmd_oracle(const GraphInput& input, int max_n, const std::string& out) {
  const Graph g = read_graph(input.in, input.format);
  const OptimalRouting best = min_congestion_routing(g, max_n);
  Output o(out);
  auto& s = o.stream();
  s << "graph6 " << encode_graph6(g) << "\n";
  s << "w_star " << best.w << "\n";
  if (g.order() >= 2) {
    s << "bound " << format_decimal(static_cast<double>(g.order()) / static_cast<double>(best.w)) << "\n";
    s << "lambda2 " << format_decimal(lambda2(g)) << "\n";
  }
  s << "nodes " << best.nodes << "\n";
  for (const auto& [key, p] : best.routing) s << "path " << to_string(p) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Routings of bounded weighted congestion and Laplacian lambda_2 certificates"};
  app.require_subcommand(1);

  GraphInput route_in;
  std::string route_out;
  int attempt_cap = ConstructOptions{}.attempt_cap;
  auto* route = app.add_subcommand("route", "construct and check a certificate for one graph");
  route_in.add(route);
  route->add_option("--out", route_out, "certificate file (default stdout)");
  route->add_option("--attempt-cap", attempt_cap, "candidate extensions per level")->capture_default_str();

  GraphInput verify_in;
  std::string cert_path;
  auto* verify = app.add_subcommand("verify", "re-verify a certificate against its graph");
  verify->add_option("--cert", cert_path, "certificate file")->required();
  verify_in.add(verify);

  GraphInput spectrum_in;
  std::string spectrum_out;
  auto* spectrum = app.add_subcommand("spectrum", "Laplacian spectra of a graph and its complement");
  spectrum_in.add(spectrum);
  spectrum->add_option("--out", spectrum_out, "output file (default stdout)");

  ScanFlags scan_flags;
  auto* scan = app.add_subcommand("scan", "scan all labelled graphs up to --n, a corpus, or random samples");
  scan->add_option("--n", scan_flags.n, "largest order (exhaustive) or sample order");
  scan->add_option("--corpus", scan_flags.corpus, "graph6 corpus file");
  scan->add_option("--sample", scan_flags.sample, "number of G(n, p) samples");
  scan->add_option("--p", scan_flags.p, "edge probability for samples")->capture_default_str();
  scan->add_option("--seed", scan_flags.seed, "seed of the first sample; sample i uses seed + i")
      ->capture_default_str();
  scan->add_flag("--oracle", scan_flags.with_oracle, "also compute the optimal congestion");
  scan->add_option("--max-n", scan_flags.max_n, "largest order given to the oracle")->capture_default_str();
  scan->add_option("--jobs", scan_flags.jobs, "worker threads")->capture_default_str();
  scan->add_option("--out", scan_flags.out, "report file (default stdout)");

  GraphInput oracle_in;
  int oracle_max_n = kOracleMaxOrder;
  std::string oracle_out;
  auto* oracle = app.add_subcommand("oracle", "exact minimum weighted congestion (small graphs)");
  oracle_in.add(oracle);
  oracle->add_option("--max-n", oracle_max_n, "refuse graphs larger than this")->capture_default_str();
  oracle->add_option("--out", oracle_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*route) return cmd_route(route_in, route_out, attempt_cap);
    if (*verify) return cmd_verify(cert_path, verify_in);
    if (*spectrum) return cmd_spectrum(spectrum_in, spectrum_out);
    if (*scan) return cmd_scan(scan_flags);
    if (*oracle) return cmd_oracle(oracle_in, oracle_max_n, oracle_out);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const DocumentError& e) {
    std::cerr << "certificate error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}
