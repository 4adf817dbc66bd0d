#include "spreadnet/cascade.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "spreadnet/features.hpp"
#include "spreadnet/graph.hpp"
#include "spreadnet/rng.hpp"

namespace sn = spreadnet;

namespace {

sn::EdgeProbabilities uniform_p(const sn::Graph& g, double p) {
  sn::EdgeProbabilities e;
  e.by_arc.assign(g.arc_count(), p);
  return e;
}

// Random simple graph on n nodes with exactly m edges (m <= C(n,2)).
sn::Graph random_graph(sn::NodeId n, std::size_t m, sn::StreamRng& rng) {
  std::vector<std::pair<sn::NodeId, sn::NodeId>> all;
  for (sn::NodeId a = 0; a < n; ++a)
    for (sn::NodeId b = a + 1; b < n; ++b) all.emplace_back(a, b);
  for (std::size_t i = 0; i < m; ++i) {  // partial Fisher-Yates
    const std::size_t j = i + rng.next_below(all.size() - i);
    std::swap(all[i], all[j]);
  }
  all.resize(m);
  return sn::Graph::from_edge_list(n, std::move(all));
}

sn::EdgeProbabilities random_p(const sn::Graph& g, sn::StreamRng& rng) {
  sn::EdgeProbabilities e;
  e.by_arc.resize(g.arc_count());
  for (auto& v : e.by_arc) v = 0.05 + 0.9 * rng.next_unit();
  return e;
}

std::vector<oracle::Arc> to_oracle_arcs(const sn::Graph& g, const sn::EdgeProbabilities& p) {
  std::vector<oracle::Arc> arcs;
  for (sn::NodeId i = 0; i < g.node_count(); ++i)
    for (sn::NodeId j : g.neighbors(i))
      arcs.push_back({i, j, p.at(g.arc_index(i, j))});
  return arcs;
}

}  // namespace

TEST(ExactSpread, ThreePathFixtures) {
  const auto g = sn::Graph::from_edge_list(3, {{0, 1}, {1, 2}});
  const std::vector<sn::NodeId> seed0{0};

  // Uniform p = 0.5 from an end: 1 + 1/2 + 1/4.
  EXPECT_NEAR(sn::exact_spread(g, uniform_p(g, 0.5), seed0), 1.75, 1e-12);

  // p(0->1) = 0.3, p(1->2) = 0.7: 1 + 0.3 + 0.21.
  sn::EdgeProbabilities p;
  p.by_arc.resize(g.arc_count());
  p.by_arc[g.arc_index(0, 1)] = 0.3;
  p.by_arc[g.arc_index(1, 0)] = 0.9;  // reverse arcs never used from seed 0
  p.by_arc[g.arc_index(1, 2)] = 0.7;
  p.by_arc[g.arc_index(2, 1)] = 0.9;
  EXPECT_NEAR(sn::exact_spread(g, p, seed0), 1.51, 1e-12);

  // Middle seed, uniform 0.5: 1 + 0.5 + 0.5.
  const std::vector<sn::NodeId> seed1{1};
  EXPECT_NEAR(sn::exact_spread(g, uniform_p(g, 0.5), seed1), 2.0, 1e-12);
}

TEST(ExactSpread, DeterministicArcsShortCircuit) {
  // A long path of p=1 arcs: spread is the whole path, and the 2^A
  // enumeration must not blow up because sure arcs are not enumerated.
  const sn::NodeId n = 40;  // 78 directed arcs, all with p = 1
  std::vector<std::pair<sn::NodeId, sn::NodeId>> edges;
  for (sn::NodeId i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  const auto g = sn::Graph::from_edge_list(n, std::move(edges));
  const std::vector<sn::NodeId> seeds{0};
  EXPECT_DOUBLE_EQ(sn::exact_spread(g, uniform_p(g, 1.0), seeds), static_cast<double>(n));
}

TEST(ExactSpread, ZeroProbabilityArcsContributeNothing) {
  const auto g = sn::Graph::from_edge_list(3, {{0, 1}, {1, 2}});
  const std::vector<sn::NodeId> seeds{0};
  EXPECT_DOUBLE_EQ(sn::exact_spread(g, uniform_p(g, 0.0), seeds), 1.0);
}

TEST(ExactSpread, MatchesIndependentEnumerationOnRandomGraphs) {
  sn::StreamRng rng(404);
  for (int trial = 0; trial < 25; ++trial) {
    const sn::NodeId n = 3 + static_cast<sn::NodeId>(rng.next_below(4));  // 3..6 nodes
    const std::size_t max_m = static_cast<std::size_t>(n) * (n - 1) / 2;
    const std::size_t m = 1 + rng.next_below(std::min<std::size_t>(max_m, 8));
    const auto g = random_graph(n, m, rng);
    const auto p = random_p(g, rng);
    std::vector<sn::NodeId> seeds{static_cast<sn::NodeId>(rng.next_below(n))};
    const double got = sn::exact_spread(g, p, seeds);
    const double want = oracle::exact_spread_enum(n, to_oracle_arcs(g, p), {seeds[0]});
    ASSERT_NEAR(got, want, 1e-10) << "n=" << n << " m=" << m << " trial=" << trial;
  }
}

TEST(ExactSpread, MultiSeedMatchesOracle) {
  sn::StreamRng rng(405);
  const auto g = random_graph(6, 8, rng);
  const auto p = random_p(g, rng);
  const std::vector<sn::NodeId> seeds{0, 3};
  EXPECT_NEAR(sn::exact_spread(g, p, seeds),
              oracle::exact_spread_enum(6, to_oracle_arcs(g, p), {0, 3}), 1e-10);
}

TEST(ExactSpread, CapacityGuardRejectsWideGraphs) {
  // 13 edges = 26 stochastic arcs > 24.
  sn::StreamRng rng(406);
  const auto g = random_graph(8, 13, rng);
  const std::vector<sn::NodeId> seeds{0};
  EXPECT_THROW((void)sn::exact_spread(g, uniform_p(g, 0.5), seeds), sn::CapacityError);
  // The same graph with deterministic arcs is fine.
  EXPECT_NO_THROW((void)sn::exact_spread(g, uniform_p(g, 1.0), seeds));
}

TEST(Cascade, SeedsAlwaysInfectedAndOutputSorted) {
  const auto g = sn::Graph::from_edge_list(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  const std::vector<sn::NodeId> seeds{4, 0};
  const auto out = sn::simulate_cascade(g, uniform_p(g, 0.0), seeds, 1);
  EXPECT_EQ(out.infected, (std::vector<sn::NodeId>{0, 4}));
  EXPECT_EQ(out.rounds, 0u);
}

TEST(Cascade, FullSpreadOnSureArcs) {
  const auto g = sn::Graph::from_edge_list(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  const std::vector<sn::NodeId> seeds{0};
  const auto out = sn::simulate_cascade(g, uniform_p(g, 1.0), seeds, 9);
  EXPECT_EQ(out.infected.size(), 5u);
  EXPECT_EQ(out.rounds, 4u);  // one wave per hop down the path
}

TEST(Cascade, DeterministicPerSeedKey) {
  sn::StreamRng rng(77);
  const auto g = random_graph(12, 20, rng);
  const auto p = random_p(g, rng);
  const std::vector<sn::NodeId> seeds{3};
  const auto a = sn::simulate_cascade(g, p, seeds, 123);
  const auto b = sn::simulate_cascade(g, p, seeds, 123);
  EXPECT_EQ(a.infected, b.infected);
  EXPECT_EQ(a.rounds, b.rounds);
}

TEST(Cascade, CoupledMonotonicityInProbabilities) {
  // Same rng key, pointwise larger probabilities: the infected set can only
  // grow. This is the live-arc coupling property the removal experiment
  // relies on.
  sn::StreamRng rng(88);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_graph(15, 25, rng);
    auto p = random_p(g, rng);
    auto q = p;
    for (auto& v : q.by_arc) v = std::min(1.0, v + 0.2);
    const std::vector<sn::NodeId> seeds{static_cast<sn::NodeId>(rng.next_below(15))};
    const std::uint64_t key = rng.next_u64();
    const auto small = sn::simulate_cascade(g, p, seeds, key);
    const auto big = sn::simulate_cascade(g, q, seeds, key);
    ASSERT_TRUE(std::includes(big.infected.begin(), big.infected.end(),
                              small.infected.begin(), small.infected.end()));
  }
}

TEST(Cascade, RemovedNodesBlockTransmission) {
  // Path 0-1-2 with node 1 removed: even sure arcs cannot cross it.
  const auto g = sn::Graph::from_edge_list(3, {{0, 1}, {1, 2}});
  const std::vector<sn::NodeId> seeds{0};
  const std::vector<char> removed{0, 1, 0};
  const auto out = sn::simulate_cascade(g, uniform_p(g, 1.0), seeds, 5, removed);
  EXPECT_EQ(out.infected, (std::vector<sn::NodeId>{0}));
}

TEST(Cascade, InputValidation) {
  const auto g = sn::Graph::from_edge_list(3, {{0, 1}, {1, 2}});
  const auto p = uniform_p(g, 0.5);
  const std::vector<sn::NodeId> empty;
  const std::vector<sn::NodeId> bad{7};
  const std::vector<sn::NodeId> ok{0};
  EXPECT_THROW((void)sn::simulate_cascade(g, p, empty, 1), sn::ParameterError);
  EXPECT_THROW((void)sn::simulate_cascade(g, p, bad, 1), sn::ParameterError);

  auto wrong_size = p;
  wrong_size.by_arc.pop_back();
  EXPECT_THROW((void)sn::simulate_cascade(g, wrong_size, ok, 1), sn::ParameterError);

  auto out_of_range = p;
  out_of_range.by_arc[0] = 1.5;
  EXPECT_THROW((void)sn::simulate_cascade(g, out_of_range, ok, 1), sn::ParameterError);

  const std::vector<char> removed_seed{1, 0, 0};
  EXPECT_THROW((void)sn::simulate_cascade(g, p, ok, 1, removed_seed), sn::ParameterError);
  const std::vector<char> short_mask{0, 0};
  EXPECT_THROW((void)sn::simulate_cascade(g, p, ok, 1, short_mask), sn::ParameterError);
}

TEST(EstimateSpread, AgreesWithExactOnSmallGraphs) {
  sn::StreamRng rng(515);
  for (int trial = 0; trial < 10; ++trial) {
    const sn::NodeId n = 4 + static_cast<sn::NodeId>(rng.next_below(4));
    const auto g = random_graph(n, std::min<std::size_t>(9, std::size_t(n) * (n - 1) / 2), rng);
    const auto p = random_p(g, rng);
    const std::vector<sn::NodeId> seeds{static_cast<sn::NodeId>(rng.next_below(n))};
    const std::size_t runs = 20000;
    const auto est = sn::estimate_spread(g, p, seeds, runs, rng.next_u64());
    const double exact = sn::exact_spread(g, p, seeds) / static_cast<double>(n);
    // 5-sigma Monte Carlo window.
    const double tol = 5.0 * est.std_fraction / std::sqrt(static_cast<double>(runs)) + 1e-9;
    ASSERT_NEAR(est.mean_fraction, exact, tol) << "trial " << trial;
  }
}

TEST(EstimateSpread, SummaryFieldsConsistent) {
  const auto g = sn::Graph::from_edge_list(4, {{0, 1}, {1, 2}, {2, 3}});
  const std::vector<sn::NodeId> seeds{0};
  const auto est = sn::estimate_spread(g, uniform_p(g, 0.5), seeds, 400, 11);
  EXPECT_EQ(est.runs, 400u);
  EXPECT_GT(est.std_fraction, 0.0);
  const double half = 1.96 * est.std_fraction / std::sqrt(400.0);
  EXPECT_NEAR(est.ci95_low, est.mean_fraction - half, 1e-12);
  EXPECT_NEAR(est.ci95_high, est.mean_fraction + half, 1e-12);
  EXPECT_THROW((void)sn::estimate_spread(g, uniform_p(g, 0.5), seeds, 0, 11),
               sn::ParameterError);
}

TEST(EstimateSpread, RunsAreOrderIndependent) {
  // The r-th run draws from a stream keyed by (seed, r): estimates with the
  // same seed are bit-identical across calls.
  const auto g = sn::Graph::from_edge_list(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
  const std::vector<sn::NodeId> seeds{2};
  const auto a = sn::estimate_spread(g, uniform_p(g, 0.4), seeds, 500, 21);
  const auto b = sn::estimate_spread(g, uniform_p(g, 0.4), seeds, 500, 21);
  EXPECT_DOUBLE_EQ(a.mean_fraction, b.mean_fraction);
  EXPECT_DOUBLE_EQ(a.std_fraction, b.std_fraction);
}

TEST(PerNodeCapacity, MatchesSingleSeedEstimates) {
  const auto g = sn::Graph::from_edge_list(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  const auto p = uniform_p(g, 0.3);
  const auto caps = sn::per_node_capacity(g, p, 200, 99);
  ASSERT_EQ(caps.size(), 5u);
  for (sn::NodeId i = 0; i < 5; ++i) {
    EXPECT_EQ(caps[i].runs, 200u);
    EXPECT_GE(caps[i].mean_fraction, 1.0 / 5.0);  // the seed itself always counts
    EXPECT_LE(caps[i].mean_fraction, 1.0);
  }
  // Capacity of node i must equal an estimate keyed the same way; the
  // per-node key is (seed, node-capacity tag, i).
  const std::vector<sn::NodeId> seeds{3};
  const auto direct = sn::estimate_spread(
      g, p, seeds, 200, sn::key_hash(99, sn::detail::kNodeCapTag, 3));
  EXPECT_DOUBLE_EQ(caps[3].mean_fraction, direct.mean_fraction);
}

TEST(PerNodeCapacity, SymmetricNodesGetIndependentDraws) {
  // A 4-cycle is vertex-transitive: capacities should be near one another but
  // not bit-identical (each node has its own stream).
  const auto g = sn::Graph::from_edge_list(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  const auto caps = sn::per_node_capacity(g, uniform_p(g, 0.5), 2000, 7);
  EXPECT_NE(caps[0].mean_fraction, caps[1].mean_fraction);
  EXPECT_NEAR(caps[0].mean_fraction, caps[1].mean_fraction, 0.05);
}
