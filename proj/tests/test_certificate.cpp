#include <gtest/gtest.h>

#include <algorithm>
#include <string>

#include "lapspread/certificate.hpp"
#include "lapspread/graph.hpp"
#include "lapspread/graph_io.hpp"

namespace lapspread {
namespace {

bool has_failure(const VerifyReport& r, const std::string& prefix) {
  return std::any_of(r.failures.begin(), r.failures.end(),
                     [&](const std::string& f) { return f.rfind(prefix, 0) == 0; });
}

CertificateDocument p4_document() { return make_document(path_graph(4), construct(path_graph(4))); }

TEST(DecimalTest, Rounding) {
  EXPECT_EQ(format_decimal(0.5), "0.5");
  EXPECT_EQ(format_decimal(2.0 - std::sqrt(2.0)), "0.585786437627");
  EXPECT_EQ(format_decimal(1e-15), "0");
  EXPECT_EQ(format_decimal(4.0), "4");
}

TEST(DocumentTest, P4Fields) {
  const CertificateDocument d = p4_document();
  EXPECT_EQ(d.n, 4);
  EXPECT_EQ(d.side, Side::graph);
  EXPECT_EQ(d.w, 8);
  EXPECT_DOUBLE_EQ(d.bound, 0.5);
  EXPECT_TRUE(d.certified);
  EXPECT_TRUE(d.checks.all());
  EXPECT_EQ(d.paths.size(), 6u);
}

TEST(DocumentTest, RoundTripIsByteIdentical) {
  for (const Graph& g : {path_graph(4), complete(4), Graph(2), cycle(5), random_gnp(7, 0.5, 3)}) {
    const std::string text = serialize(make_document(g, construct(g)));
    EXPECT_EQ(serialize(parse_document(text)), text);
  }
}

TEST(DocumentTest, ParseErrors) {
  EXPECT_THROW(parse_document("not json"), DocumentError);
  EXPECT_THROW(parse_document("{}"), DocumentError);
  auto j = to_json(p4_document());
  j["schema_version"] = 2;
  EXPECT_THROW(parse_document(j.dump()), DocumentError);
}

TEST(VerifyTest, UntamperedPasses) {
  for (const Graph& g : {path_graph(4), complete(4), Graph(2), star(6), random_gnp(7, 0.4, 11)}) {
    const auto r = verify_document(make_document(g, construct(g)), g);
    EXPECT_TRUE(r.ok()) << encode_graph6(g) << ": " << (r.failures.empty() ? "" : r.failures[0]);
  }
}

TEST(VerifyTest, DeletedPathIsMissingPair) {
  CertificateDocument d = p4_document();
  d.paths.pop_back();
  const auto r = verify_document(d, path_graph(4));
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(has_failure(r, "invalid routing: missing pair"));
}

TEST(VerifyTest, TamperedW) {
  CertificateDocument d = p4_document();
  d.w = 7;
  const auto r = verify_document(d, path_graph(4));
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(has_failure(r, "congestion mismatch"));
}

TEST(VerifyTest, MismatchedGraph) {
  const auto r = verify_document(p4_document(), cycle(4));
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(has_failure(r, "mismatched graph"));
}

TEST(VerifyTest, TamperedLambda) {
  CertificateDocument d = p4_document();
  d.lambda2_graph = 0.6;
  EXPECT_FALSE(verify_document(d, path_graph(4)).ok());
}

TEST(VerifyTest, TamperedCheckFlag) {
  CertificateDocument d = p4_document();
  d.checks.theorem1 = false;
  EXPECT_FALSE(verify_document(d, path_graph(4)).ok());
}

}  // namespace
}  // namespace lapspread
