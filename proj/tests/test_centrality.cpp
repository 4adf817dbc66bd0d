#include "spreadnet/centrality.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "oracles.hpp"
#include "spreadnet/analysis.hpp"
#include "spreadnet/features.hpp"
#include "spreadnet/graph.hpp"
#include "spreadnet/rng.hpp"

namespace sn = spreadnet;

namespace {

sn::EdgeProbabilities uniform_p(const sn::Graph& g, double w) {
  sn::EdgeProbabilities e;
  e.by_arc.assign(g.arc_count(), w);
  return e;
}

sn::Graph path_graph(sn::NodeId n) {
  std::vector<std::pair<sn::NodeId, sn::NodeId>> edges;
  for (sn::NodeId i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return sn::Graph::from_edge_list(n, std::move(edges));
}

// Connected random graph: random spanning tree plus extra random edges.
sn::Graph random_connected_graph(sn::NodeId n, std::size_t extra, sn::StreamRng& rng) {
  std::vector<std::pair<sn::NodeId, sn::NodeId>> edges;
  for (sn::NodeId v = 1; v < n; ++v)
    edges.emplace_back(static_cast<sn::NodeId>(rng.next_below(v)), v);
  std::size_t attempts = 0;
  while (extra > 0 && attempts < 20 * extra) {
    ++attempts;
    const auto a = static_cast<sn::NodeId>(rng.next_below(n));
    const auto b = static_cast<sn::NodeId>(rng.next_below(n));
    if (a == b) continue;
    const auto e = std::minmax(a, b);
    if (std::find(edges.begin(), edges.end(), std::make_pair(e.first, e.second)) != edges.end())
      continue;
    edges.emplace_back(e.first, e.second);
    --extra;
  }
  return sn::Graph::from_edge_list(n, std::move(edges));
}

sn::EdgeProbabilities random_weights(const sn::Graph& g, sn::StreamRng& rng) {
  sn::EdgeProbabilities e;
  e.by_arc.resize(g.arc_count());
  for (auto& v : e.by_arc) v = 0.05 + 0.9 * rng.next_unit();
  return e;
}

std::vector<std::vector<std::size_t>> adjacency_of(const sn::Graph& g) {
  std::vector<std::vector<std::size_t>> adj(g.node_count());
  for (sn::NodeId i = 0; i < g.node_count(); ++i)
    for (sn::NodeId j : g.neighbors(i)) adj[i].push_back(j);
  return adj;
}

std::vector<std::vector<double>> length_matrix(const sn::Graph& g,
                                               const sn::EdgeProbabilities& p) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<double>> len(n, std::vector<double>(n, oracle::kInf));
  for (sn::NodeId i = 0; i < n; ++i)
    for (sn::NodeId j : g.neighbors(i)) len[i][j] = p.at(g.arc_index(i, j));
  return len;
}

}  // namespace

// ---------------------------------------------------------------------------
// Unweighted metrics on hand-checked fixtures

TEST(Degree, PathFixture) {
  const auto d = sn::degree_centrality(path_graph(5));
  EXPECT_EQ(d, (std::vector<double>{1, 2, 2, 2, 1}));
}

TEST(KCore, CliqueWithPendant) {
  // K4 on {0,1,2,3} plus pendant 4 on node 3: cores (3,3,3,3,1).
  const auto g = sn::Graph::from_edge_list(
      5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}});
  EXPECT_EQ(sn::k_core(g), (std::vector<double>{3, 3, 3, 3, 1}));
}

TEST(KCore, PeelingCascades) {
  // A triangle with a tail 3-4: tail peels at 1, triangle stays 2-core.
  const auto g = sn::Graph::from_edge_list(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}});
  EXPECT_EQ(sn::k_core(g), (std::vector<double>{2, 2, 2, 1, 1}));
}

TEST(HIndex, NeighborDegreeFixture) {
  // Star center: neighbor degrees (1,1,1) -> h = 1. Leaves: (3) -> h = 1.
  const auto star = sn::Graph::from_edge_list(4, {{0, 1}, {0, 2}, {0, 3}});
  EXPECT_EQ(sn::h_index(star), (std::vector<double>{1, 1, 1, 1}));

  // Classic sequence: neighbor degrees (5,4,4,2,1) give h = 3. Build a hub 0
  // adjacent to nodes of degrees 5,4,4,2,1 (degrees include the hub edge).
  // Hub 0 - {1,2,3,4,5}; raise degrees with extra leaves.
  std::vector<std::pair<sn::NodeId, sn::NodeId>> edges{{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}};
  sn::NodeId next = 6;
  for (int t = 0; t < 4; ++t) edges.emplace_back(1, next++);  // deg(1) = 5
  for (int t = 0; t < 3; ++t) edges.emplace_back(2, next++);  // deg(2) = 4
  for (int t = 0; t < 3; ++t) edges.emplace_back(3, next++);  // deg(3) = 4
  edges.emplace_back(4, next++);                              // deg(4) = 2
  const auto g = sn::Graph::from_edge_list(next, std::move(edges));
  EXPECT_DOUBLE_EQ(sn::h_index(g)[0], 3.0);
}

TEST(Eccentricity, PathFixtureRawDistances) {
  // P5 eccentricities are raw max distances: 4,3,2,3,4 (peripheral is larger).
  const auto ecc = sn::eccentricity(path_graph(5));
  EXPECT_EQ(ecc, (std::vector<double>{4, 3, 2, 3, 4}));
}

TEST(Closeness, PathFixture) {
  // CC_i = (N-1) / sum_j d_ij; P4 distance sums are 6,4,4,6.
  const auto cc = sn::closeness(path_graph(4));
  ASSERT_EQ(cc.size(), 4u);
  EXPECT_DOUBLE_EQ(cc[0], 3.0 / 6.0);
  EXPECT_DOUBLE_EQ(cc[1], 3.0 / 4.0);
  EXPECT_DOUBLE_EQ(cc[2], 3.0 / 4.0);
  EXPECT_DOUBLE_EQ(cc[3], 3.0 / 6.0);
}

TEST(Betweenness, PathAndStarFixtures) {
  // P5 center node lies on 4 of the C(5,2)=10 unordered pairs' paths.
  EXPECT_EQ(sn::betweenness(path_graph(5)), (std::vector<double>{0, 3, 4, 3, 0}));
  // Star center: all C(3,2)=3 leaf pairs route through it.
  const auto star = sn::Graph::from_edge_list(4, {{0, 1}, {0, 2}, {0, 3}});
  EXPECT_EQ(sn::betweenness(star), (std::vector<double>{3, 0, 0, 0}));
}

TEST(Betweenness, SplitsEquallyOverParallelShortestPaths) {
  // 4-cycle: each pair of opposite nodes has two shortest paths, each middle
  // node carries 1/2. BC(v) = 0.5 for all nodes.
  const auto c4 = sn::Graph::from_edge_list(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  const auto bc = sn::betweenness(c4);
  for (double v : bc) EXPECT_DOUBLE_EQ(v, 0.5);
}

TEST(Pagerank, ThreePathOscillationIsCycleAveraged) {
  // P3 is bipartite: the undamped iteration enters a period-2 cycle whose
  // mean is (0.75, 1.5, 0.75).
  const auto pr = sn::pagerank(path_graph(3));
  EXPECT_EQ(pr.status, sn::PowerIterationResult::Status::kCycleAveraged);
  ASSERT_EQ(pr.values.size(), 3u);
  EXPECT_NEAR(pr.values[0], 0.75, 1e-9);
  EXPECT_NEAR(pr.values[1], 1.50, 1e-9);
  EXPECT_NEAR(pr.values[2], 0.75, 1e-9);
}

TEST(Pagerank, RegularGraphIsUniform) {
  const auto c5 = sn::Graph::from_edge_list(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  const auto pr = sn::pagerank(c5);
  for (double v : pr.values) EXPECT_NEAR(v, 1.0, 1e-9);
}

TEST(Pagerank, SumEqualsNodeCount) {
  sn::StreamRng rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = random_connected_graph(30, 25, rng);
    const auto pr = sn::pagerank(g);
    const double sum = std::accumulate(pr.values.begin(), pr.values.end(), 0.0);
    ASSERT_NEAR(sum, 30.0, 1e-9);
  }
}

TEST(Pagerank, MatchesDensePowerIterationOracle) {
  sn::StreamRng rng(62);
  const auto g = random_connected_graph(12, 10, rng);
  const std::size_t n = g.node_count();
  std::vector<std::vector<double>> share(n, std::vector<double>(n, 0.0));
  for (sn::NodeId j = 0; j < n; ++j)
    for (sn::NodeId i : g.neighbors(j))
      share[j][i] = 1.0 / static_cast<double>(g.degree(j));
  const auto want = oracle::power_iteration_dense(share);
  const auto got = sn::pagerank(g);
  for (std::size_t i = 0; i < n; ++i) ASSERT_NEAR(got.values[i], want[i], 1e-8);
}

TEST(Pagerank, IsolatedNodeRejected) {
  const auto g = sn::Graph::from_edge_list(3, {{0, 1}});
  EXPECT_THROW((void)sn::pagerank(g), sn::ParameterError);
}

// ---------------------------------------------------------------------------
// Weighted metrics

TEST(WeightedDegree, SumsOutgoingArcProbabilities) {
  const auto g = path_graph(3);
  auto p = uniform_p(g, 0.0);
  p.by_arc[g.arc_index(0, 1)] = 0.4;
  p.by_arc[g.arc_index(1, 0)] = 0.1;
  p.by_arc[g.arc_index(1, 2)] = 0.5;
  p.by_arc[g.arc_index(2, 1)] = 0.9;
  EXPECT_EQ(sn::weighted_degree(g, p), (std::vector<double>{0.4, 0.6, 0.9}));
}

TEST(WeightedHIndex, TwoNeighborFixtures) {
  // Hub 0 with neighbors 1, 2; arc weights from 0 are w1, w2 and neighbor
  // out-strengths are s1, s2.
  const auto make = [](double w1, double w2, double s1_extra, double s2_extra) {
    // 0-1, 0-2 plus pendant edges 1-3, 2-4 to tune neighbor strengths.
    const auto g = sn::Graph::from_edge_list(5, {{0, 1}, {0, 2}, {1, 3}, {2, 4}});
    sn::EdgeProbabilities p = uniform_p(g, 0.0);
    p.by_arc[g.arc_index(0, 1)] = w1;
    p.by_arc[g.arc_index(0, 2)] = w2;
    p.by_arc[g.arc_index(1, 0)] = 0.05;  // strengths: s1 = 0.05 + s1_extra
    p.by_arc[g.arc_index(2, 0)] = 0.05;
    p.by_arc[g.arc_index(1, 3)] = s1_extra;
    p.by_arc[g.arc_index(2, 4)] = s2_extra;
    p.by_arc[g.arc_index(3, 1)] = 0.01;
    p.by_arc[g.arc_index(4, 2)] = 0.01;
    return std::make_pair(g, p);
  };
  {
    // Single relevant neighbor: h = min(cum w, strength) maxed over prefixes.
    // w = 0.5 into a neighbor of strength 0.3 -> 0.3.
    auto [g, p] = make(0.5, 0.0, 0.25, 0.0);
    EXPECT_NEAR(sn::weighted_h_index(g, p)[0], 0.3, 1e-12);
  }
  {
    // Neighbors sorted by strength desc: (w=1 into s=1), (w=1 into s=0.5):
    // max(min(1,1), min(2,0.5)) = 1.
    auto [g, p] = make(1.0, 1.0, 0.95, 0.45);
    EXPECT_NEAR(sn::weighted_h_index(g, p)[0], 1.0, 1e-12);
  }
}

TEST(WeightedCloseness, TriangleUsesProbabilitiesAsLengths) {
  // Exact in doubles: 0.1 + 0.1 < 0.3, so d(0,1) routes through 2.
  const auto g = sn::Graph::from_edge_list(3, {{0, 1}, {1, 2}, {0, 2}});
  auto p = uniform_p(g, 0.1);
  p.by_arc[g.arc_index(0, 1)] = 0.3;
  p.by_arc[g.arc_index(1, 0)] = 0.3;
  const auto wc = sn::weighted_closeness(g, p);
  // WCC_i = 1 / sum_j d_ij (no N-1 factor).
  EXPECT_DOUBLE_EQ(wc[0], 1.0 / (0.2 + 0.1));
  EXPECT_DOUBLE_EQ(wc[1], 1.0 / (0.2 + 0.1));
  EXPECT_DOUBLE_EQ(wc[2], 1.0 / (0.1 + 0.1));
}

TEST(WeightedCloseness, ZeroWeightArcsArePermitted) {
  const auto g = path_graph(3);
  const auto wc = sn::weighted_closeness(g, uniform_p(g, 0.0));
  // All distances are 0: 1/0 = inf is not meaningful; ensure no throw and
  // values are infinite rather than NaN.
  for (double v : wc) EXPECT_TRUE(std::isinf(v));
}

TEST(WeightedBetweenness, MatchesPathCountingOracle) {
  sn::StreamRng rng(63);
  for (int trial = 0; trial < 15; ++trial) {
    const auto g = random_connected_graph(10, 8, rng);
    const auto p = random_weights(g, rng);
    const auto len = length_matrix(g, p);
    const auto dist = oracle::floyd_warshall(len);
    const auto want = oracle::betweenness_from_dist(len, dist);
    const auto got = sn::weighted_betweenness(g, p);
    for (std::size_t i = 0; i < got.size(); ++i) ASSERT_NEAR(got[i], want[i], 1e-8);
  }
}

TEST(Betweenness, MatchesPathCountingOracleUnweighted) {
  sn::StreamRng rng(64);
  for (int trial = 0; trial < 15; ++trial) {
    const auto g = random_connected_graph(12, 10, rng);
    const auto len_unit = length_matrix(g, uniform_p(g, 1.0));
    const auto dist = oracle::floyd_warshall(len_unit);
    const auto want = oracle::betweenness_from_dist(len_unit, dist);
    const auto got = sn::betweenness(g);
    for (std::size_t i = 0; i < got.size(); ++i) ASSERT_NEAR(got[i], want[i], 1e-9);
  }
}

TEST(WeightedCloseness, MatchesFloydWarshallOracle) {
  sn::StreamRng rng(65);
  const auto g = random_connected_graph(15, 12, rng);
  const auto p = random_weights(g, rng);
  const auto dist = oracle::floyd_warshall(length_matrix(g, p));
  const auto got = sn::weighted_closeness(g, p);
  for (std::size_t i = 0; i < got.size(); ++i) {
    double sum = 0;
    for (std::size_t j = 0; j < dist.size(); ++j) sum += dist[i][j];
    ASSERT_NEAR(got[i], 1.0 / sum, 1e-10);
  }
}

TEST(WeightedPagerank, TwoNodeFixtureIsUniform) {
  // Shares normalize by out-strength, so a 2-node graph is always (1, 1).
  const auto g = sn::Graph::from_edge_list(2, {{0, 1}});
  auto p = uniform_p(g, 0.0);
  p.by_arc[g.arc_index(0, 1)] = 0.8;
  p.by_arc[g.arc_index(1, 0)] = 0.2;
  const auto pr = sn::weighted_pagerank(g, p);
  EXPECT_NEAR(pr.values[0], 1.0, 1e-9);
  EXPECT_NEAR(pr.values[1], 1.0, 1e-9);
}

TEST(WeightedPagerank, MatchesDenseOracleAndConservesMass) {
  sn::StreamRng rng(66);
  const auto g = random_connected_graph(12, 12, rng);
  const auto p = random_weights(g, rng);
  const std::size_t n = g.node_count();
  const auto wd = sn::weighted_degree(g, p);
  std::vector<std::vector<double>> share(n, std::vector<double>(n, 0.0));
  for (sn::NodeId j = 0; j < n; ++j)
    for (sn::NodeId i : g.neighbors(j)) share[j][i] = p.at(g.arc_index(j, i)) / wd[j];
  const auto want = oracle::power_iteration_dense(share);
  const auto got = sn::weighted_pagerank(g, p);
  double sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ASSERT_NEAR(got.values[i], want[i], 1e-8);
    sum += got.values[i];
  }
  EXPECT_NEAR(sum, static_cast<double>(n), 1e-9);
}

TEST(WeightedPagerank, ZeroStrengthNodeRejected) {
  const auto g = path_graph(3);
  auto p = uniform_p(g, 0.5);
  p.by_arc[g.arc_index(0, 1)] = 0.0;  // node 0 has zero out-strength
  EXPECT_THROW((void)sn::weighted_pagerank(g, p), sn::ParameterError);
}

// ---------------------------------------------------------------------------
// Cross-metric properties

TEST(MetricChain, CoreLeHIndexLeDegree) {
  sn::StreamRng rng(67);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_connected_graph(40, 30, rng);
    const auto core = sn::k_core(g);
    const auto h = sn::h_index(g);
    const auto deg = sn::degree_centrality(g);
    for (sn::NodeId i = 0; i < g.node_count(); ++i) {
      ASSERT_LE(core[i], h[i]);
      ASSERT_LE(h[i], deg[i]);
    }
  }
}

TEST(MetricChain, LeafProperties) {
  const auto g = path_graph(6);
  const auto bc = sn::betweenness(g);
  EXPECT_DOUBLE_EQ(bc[0], 0.0);  // leaves carry no shortest paths
  EXPECT_DOUBLE_EQ(bc[5], 0.0);
  const auto ecc = sn::eccentricity(g);
  for (double v : ecc) EXPECT_GE(v, 1.0);
}

TEST(WeightedMetrics, ConstantWeightReproducesUnweightedRankings) {
  sn::StreamRng rng(68);
  const auto g = random_connected_graph(35, 30, rng);
  const auto p = uniform_p(g, 0.25);

  const auto deg = sn::degree_centrality(g);
  const auto wdeg = sn::weighted_degree(g, p);
  EXPECT_NEAR(sn::spearman(deg, wdeg), 1.0, 1e-12);

  const auto h = sn::h_index(g);
  const auto wh = sn::weighted_h_index(g, p);
  EXPECT_NEAR(sn::spearman(h, wh), 1.0, 1e-12);

  const auto cc = sn::closeness(g);
  const auto wcc = sn::weighted_closeness(g, p);
  EXPECT_NEAR(sn::spearman(cc, wcc), 1.0, 1e-12);

  const auto bc = sn::betweenness(g);
  const auto wbc = sn::weighted_betweenness(g, p);
  for (sn::NodeId i = 0; i < g.node_count(); ++i) ASSERT_NEAR(bc[i], wbc[i], 1e-8);

  const auto pr = sn::pagerank(g);
  const auto wpr = sn::weighted_pagerank(g, p);
  for (sn::NodeId i = 0; i < g.node_count(); ++i)
    ASSERT_NEAR(pr.values[i], wpr.values[i], 1e-8);
}

TEST(WeightedHIndex, InvariantToTieOrderWithinEqualStrengths) {
  // Two neighbors with identical strengths: the result must not depend on
  // their id order, which the sort tie-breaks by.
  const auto g = sn::Graph::from_edge_list(3, {{0, 1}, {0, 2}});
  auto p = uniform_p(g, 0.0);
  p.by_arc[g.arc_index(0, 1)] = 0.6;
  p.by_arc[g.arc_index(0, 2)] = 0.4;
  p.by_arc[g.arc_index(1, 0)] = 0.7;  // strengths both 0.7
  p.by_arc[g.arc_index(2, 0)] = 0.7;

  auto q = uniform_p(g, 0.0);  // same situation with neighbor roles swapped
  q.by_arc[g.arc_index(0, 1)] = 0.4;
  q.by_arc[g.arc_index(0, 2)] = 0.6;
  q.by_arc[g.arc_index(1, 0)] = 0.7;
  q.by_arc[g.arc_index(2, 0)] = 0.7;

  EXPECT_DOUBLE_EQ(sn::weighted_h_index(g, p)[0], sn::weighted_h_index(g, q)[0]);
}

// ---------------------------------------------------------------------------
// Disconnected handling and the all-metrics bundle

TEST(DistanceMetrics, DisconnectedGraphRejectedWithHint) {
  const auto g = sn::Graph::from_edge_list(4, {{0, 1}, {2, 3}});
  try {
    (void)sn::eccentricity(g);
    FAIL() << "expected DegenerateInput";
  } catch (const sn::DegenerateInput& e) {
    EXPECT_NE(std::string(e.what()).find("largest_component"), std::string::npos);
  }
  EXPECT_THROW((void)sn::closeness(g), sn::DegenerateInput);
  EXPECT_THROW((void)sn::weighted_closeness(g, uniform_p(g, 0.5)), sn::DegenerateInput);
}

TEST(AllMetrics, ProducesAllTwelveOnConnectedGraph) {
  sn::StreamRng rng(69);
  const auto g = random_connected_graph(25, 20, rng);
  const auto p = random_weights(g, rng);
  const auto all = sn::compute_all_metrics(g, p);
  for (sn::Metric m : sn::kAllMetrics) {
    ASSERT_EQ(all.of(m).size(), g.node_count());
    for (double v : all.of(m)) ASSERT_TRUE(std::isfinite(v));
  }
  // Spot-check agreement with the standalone functions.
  EXPECT_EQ(all.of(sn::Metric::kDegree), sn::degree_centrality(g));
  EXPECT_EQ(all.of(sn::Metric::kBetweenness), sn::betweenness(g));
  EXPECT_EQ(all.of(sn::Metric::kWeightedDegree), sn::weighted_degree(g, p));
}

TEST(AllMetrics, DisconnectedGraphPadsWithNaN) {
  // Triangle plus separate edge: distance metrics are computed on the
  // triangle (largest component) and NaN elsewhere.
  const auto g = sn::Graph::from_edge_list(5, {{0, 1}, {1, 2}, {0, 2}, {3, 4}});
  const auto p = uniform_p(g, 0.5);
  const auto all = sn::compute_all_metrics(g, p);
  for (sn::Metric m : {sn::Metric::kEccentricity, sn::Metric::kCloseness,
                       sn::Metric::kWeightedCloseness}) {
    const auto& v = all.of(m);
    EXPECT_TRUE(std::isfinite(v[0]));
    EXPECT_TRUE(std::isfinite(v[2]));
    EXPECT_TRUE(std::isnan(v[3]));
    EXPECT_TRUE(std::isnan(v[4]));
  }
  // Degree-style metrics stay defined everywhere.
  for (double v : all.of(sn::Metric::kDegree)) EXPECT_TRUE(std::isfinite(v));
  // Betweenness is defined per component (no cross-component pairs exist).
  for (double v : all.of(sn::Metric::kBetweenness)) EXPECT_TRUE(std::isfinite(v));
}

TEST(ComputeMetric, SingleMetricMatchesBundle) {
  sn::StreamRng rng(70);
  const auto g = random_connected_graph(20, 15, rng);
  const auto p = random_weights(g, rng);
  const auto all = sn::compute_all_metrics(g, p);
  for (sn::Metric m : sn::kAllMetrics) {
    const auto single = sn::compute_metric(g, p, m);
    EXPECT_EQ(single.metric, sn::metric_name(m));
    ASSERT_EQ(single.values.size(), g.node_count());
    for (sn::NodeId i = 0; i < g.node_count(); ++i)
      ASSERT_DOUBLE_EQ(single.values[i], all.of(m)[i]) << sn::metric_name(m) << " node " << i;
  }
}

TEST(MetricRegistry, NamesRoundTrip) {
  for (sn::Metric m : sn::kAllMetrics)
    EXPECT_EQ(sn::metric_from_name(sn::metric_name(m)), m);
  EXPECT_THROW((void)sn::metric_from_name("nope"), sn::ParameterError);
  EXPECT_EQ(sn::metric_from_name("wpagerank"), sn::Metric::kWeightedPageRank);
}
