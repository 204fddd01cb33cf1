#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "lapspread/graph.hpp"
#include "lapspread/oracle.hpp"
#include "lapspread/routing.hpp"
#include "test_util.hpp"

namespace lapspread {
namespace {

Routing direct_routing(const Graph& g) {
  Routing r;
  for (auto [a, b] : g.edges()) r.add({g.label(a), g.label(b)});
  return r;
}

Routing p4_routing() {
  Routing r;
  for (Path p : {Path{0, 1}, Path{1, 2}, Path{2, 3}, Path{0, 1, 2}, Path{1, 2, 3}, Path{0, 1, 2, 3}}) r.add(p);
  return r;
}

/// One uniformly chosen simple path per pair.
Routing random_routing(const Graph& g, testutil::Rng& rng) {
  Routing r;
  for (Vertex a = 0; a < g.order(); ++a) {
    for (Vertex b = a + 1; b < g.order(); ++b) {
      const auto paths = simple_paths(g, a, b);
      const auto& chosen = paths[rng.below(paths.size())];
      Path p;
      for (Vertex x : chosen) p.push_back(g.label(x));
      r.add(p);
    }
  }
  return r;
}

TEST(RoutingTest, StoresSmallerEndpointFirst) {
  Routing r;
  EXPECT_TRUE(r.add({3, 2, 1}));
  EXPECT_FALSE(r.add({1, 0, 3}));
  ASSERT_NE(r.find(3, 1), nullptr);
  EXPECT_EQ(*r.find(3, 1), (Path{1, 2, 3}));
  EXPECT_EQ(r.find(1, 3), r.find(3, 1));
}

TEST(ValidateRoutingTest, TriangleDirectEdges) {
  EXPECT_TRUE(validate_routing(complete(3), direct_routing(complete(3))).ok());
}

TEST(ValidateRoutingTest, MissingPair) {
  Routing r = p4_routing();
  r.erase(0, 3);
  const auto v = validate_routing(path_graph(4), r);
  ASSERT_EQ(v.violations.size(), 1u);
  EXPECT_EQ(v.violations[0], "missing pair {0,3}");
}

TEST(ValidateRoutingTest, NonEdgeStep) {
  Routing r = p4_routing();
  r.erase(0, 3);
  r.add({0, 2, 3});
  const auto v = validate_routing(path_graph(4), r);
  ASSERT_FALSE(v.ok());
  EXPECT_NE(std::find(v.violations.begin(), v.violations.end(), "path 0-2-3: 0-2 is not an edge"),
            v.violations.end());
}

TEST(ValidateRoutingTest, RepeatedVertexAndUnknownLabel) {
  Routing r = direct_routing(complete(3));
  r.erase(0, 2);
  r.add({0, 1, 0, 2});
  r.add({0, 9});
  const auto v = validate_routing(complete(3), r);
  EXPECT_EQ(v.violations.size(), 2u);
}

TEST(CongestionTest, K4DirectEdges) {
  const auto c = weighted_congestion(complete(4), direct_routing(complete(4)));
  EXPECT_EQ(c.w, 1);
  for (const auto& [e, x] : c.per_edge) EXPECT_EQ(x, 1);
}

TEST(CongestionTest, P4UniqueRouting) {
  const auto c = weighted_congestion(path_graph(4), p4_routing());
  EXPECT_EQ(c.at(0, 1), 6);
  EXPECT_EQ(c.at(1, 2), 8);
  EXPECT_EQ(c.at(2, 3), 6);
  EXPECT_EQ(c.w, 8);
}

TEST(CongestionTest, StarViaCentre) {
  const Graph s = star(4);
  const auto c = weighted_congestion(s, shortest_path_routing(s));
  for (const auto& [e, x] : c.per_edge) EXPECT_EQ(x, 5);
  EXPECT_EQ(c.w, 2 * 4 - 3);
}

TEST(CongestionTest, InvalidRoutingThrows) {
  Routing r = p4_routing();
  r.erase(1, 2);
  EXPECT_THROW(weighted_congestion(path_graph(4), r), RoutingError);
}

TEST(CongestionTest, TotalEqualsSquaredLengths) {
  testutil::Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = random_gnp(2 + static_cast<int>(rng.below(5)), 0.7, rng.next());
    if (!is_connected(g)) continue;
    const Routing r = random_routing(g, rng);
    const auto c = weighted_congestion(g, r);
    EXPECT_EQ(c.total(), r.squared_length_sum());
    EXPECT_EQ(c.w, std::max_element(c.per_edge.begin(), c.per_edge.end(), [](auto& l, auto& r2) {
                     return l.second < r2.second;
                   })->second);
  }
}

TEST(CongestionTest, LabelInvariant) {
  testutil::Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(4));
    const Graph g = random_gnp(n, 0.6, rng.next());
    if (!is_connected(g)) continue;
    const Routing r = random_routing(g, rng);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng.engine());
    Routing moved;
    for (const auto& [key, p] : r) {
      Path q;
      for (Label x : p) q.push_back(perm[static_cast<std::size_t>(x)]);
      moved.add(q);
    }
    auto values = [](const CongestionReport& c) {
      std::vector<std::int64_t> v;
      for (const auto& [e, x] : c.per_edge) v.push_back(x);
      std::sort(v.begin(), v.end());
      return v;
    };
    const auto before = weighted_congestion(g, r);
    const auto after = weighted_congestion(permute(g, perm), moved);
    EXPECT_EQ(values(before), values(after));
    EXPECT_EQ(before.w, after.w);
  }
}

TEST(SpectralBoundTest, K2IsTight) {
  const auto r = spectral_bound_check(complete(2), direct_routing(complete(2)));
  EXPECT_EQ(r.w, 1);
  EXPECT_DOUBLE_EQ(r.bound, 2.0);
  EXPECT_NEAR(r.lambda2, 2.0, 1e-9);
  EXPECT_TRUE(r.ok);
}

TEST(SpectralBoundTest, P4) {
  const auto r = spectral_bound_check(path_graph(4), p4_routing());
  EXPECT_EQ(r.w, 8);
  EXPECT_DOUBLE_EQ(r.bound, 0.5);
  EXPECT_NEAR(r.lambda2, 2.0 - std::sqrt(2.0), 1e-9);
  EXPECT_TRUE(r.ok);
}

TEST(SpectralBoundTest, C5UniqueMidpoints) {
  const Graph c = cycle(5);
  const auto r = spectral_bound_check(c, shortest_path_routing(c));
  EXPECT_EQ(r.w, 5);
  EXPECT_DOUBLE_EQ(r.bound, 1.0);
  EXPECT_NEAR(r.lambda2, 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi / 5.0), 1e-9);
  EXPECT_TRUE(r.ok);
}

// lambda_2 >= n / w for arbitrary routings, not only constructed ones.
TEST(SpectralBoundTest, HoldsForRandomRoutingsOnAllConnectedGraphsUpToSix) {
  testutil::Rng rng(77);
  for (int n = 2; n <= 6; ++n) {
    const int m = n * (n - 1) / 2;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
      const Graph g = graph_from_upper_bits(n, bits);
      if (!is_connected(g)) continue;
      const double l2 = lambda2(g);
      const int trials = n <= 5 ? 4 : 1;
      for (int t = 0; t < trials; ++t) {
        const Routing r = random_routing(g, rng);
        ASSERT_EQ(r.size(), static_cast<std::size_t>(m));
        const auto w = weighted_congestion(g, r).w;
        ASSERT_GE(l2, static_cast<double>(n) / static_cast<double>(w) - 1e-8) << encode_graph6(g);
      }
    }
  }
}

TEST(SpectralBoundTest, HoldsForRandomRoutingsOnSevenVertexSample) {
  testutil::Rng rng(78);
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 500; ++seed) {
    const Graph g = random_gnp(7, 0.45, seed);
    if (!is_connected(g)) continue;
    ++checked;
    const Routing r = random_routing(g, rng);
    EXPECT_TRUE(spectral_bound_check(g, r).ok) << encode_graph6(g);
  }
}

}  // namespace
}  // namespace lapspread
