#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "spreadnet/common.hpp"
#include "spreadnet/features.hpp"
#include "spreadnet/graph.hpp"
#include "spreadnet/rng.hpp"

namespace spreadnet {

namespace detail {
constexpr std::uint64_t kRrSampleTag = 0x72722d73616d706cull;
constexpr std::uint64_t kRrRootTag = 0x72722d726f6f7420ull;
constexpr std::uint64_t kKptTag = 0x6b70742d65737420ull;
}  // namespace detail

/// Reverse-reachable sets: each holds every node that reaches a uniformly
/// drawn root through live arcs (arc i->j live with probability p_ij, tested
/// from the j side). The fraction of sets a seed set covers estimates its
/// spreadability.
struct RRCollection {
  std::vector<std::vector<NodeId>> sets;
  std::vector<NodeId> source_nodes;  // the root of each set

  std::size_t theta() const { return sets.size(); }

  std::size_t total_nodes() const {
    std::size_t t = 0;
    for (const auto& s : sets) t += s.size();
    return t;
  }
};

/// One RR set from the stream addressed by `stream_key`. The root comes from
/// the stream; each arc's liveness draw is keyed by (stream_key, arc slot) so
/// an arc reached twice in the walk keeps one verdict.
inline std::vector<NodeId> sample_rr_set(const Graph& g, const EdgeProbabilities& p,
                                         std::uint64_t stream_key, NodeId* root_out = nullptr) {
  const NodeId n = g.node_count();
  if (n < 1) throw ParameterError("graph has no nodes");
  if (p.size() != g.arc_count()) throw ParameterError("probability table does not match graph");

  StreamRng rng(key_hash(stream_key, detail::kRrRootTag));
  const NodeId root = static_cast<NodeId>(rng.next_below(n));
  if (root_out) *root_out = root;

  std::vector<NodeId> set;
  std::vector<char> visited(n, 0);
  std::vector<NodeId> stack;
  visited[root] = 1;
  set.push_back(root);
  stack.push_back(root);
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    // incoming arcs u->v; in CSR the slot lives in u's row
    for (NodeId u : g.neighbors(v)) {
      if (visited[u]) continue;
      const std::size_t arc = g.arc_index(u, v);
      if (keyed_unit(stream_key, arc) < p.at(arc)) {
        visited[u] = 1;
        set.push_back(u);
        stack.push_back(u);
      }
    }
  }
  return set;
}

inline RRCollection sample_rr_sets(const Graph& g, const EdgeProbabilities& p, std::size_t theta,
                                   std::uint64_t rng_seed) {
  if (theta == 0) throw ParameterError("theta must be >= 1");
  RRCollection rr;
  rr.sets.reserve(theta);
  rr.source_nodes.resize(theta);
  for (std::size_t s = 0; s < theta; ++s) {
    rr.sets.push_back(
        sample_rr_set(g, p, key_hash(rng_seed, detail::kRrSampleTag, s), &rr.source_nodes[s]));
  }
  return rr;
}

struct SeedSelection {
  std::vector<NodeId> seeds;                // in pick order
  double estimated_spread = 0.0;            // n * coverage_fraction
  double coverage_fraction = 0.0;
  std::vector<double> spread_after_rank;    // estimated spread after each pick
  bool truncated = false;                   // k exceeded n and was clamped
  std::size_t theta = 0;
  double kpt_estimate = std::numeric_limits<double>::quiet_NaN();  // auto mode only
  double lambda = std::numeric_limits<double>::quiet_NaN();        // auto mode only
};

/// Greedy maximum coverage over the RR sets: each pick is the node in the
/// most still-uncovered sets, ties by ascending id.
inline SeedSelection greedy_max_coverage(const RRCollection& rr, NodeId n, std::size_t k) {
  if (k < 1) throw ParameterError("k must be >= 1");
  if (rr.theta() == 0) throw ParameterError("no RR sets to cover");
  SeedSelection sel;
  sel.theta = rr.theta();
  if (k > n) {
    k = n;
    sel.truncated = true;
  }

  // inverted index: node -> the sets containing it (flat CSR layout)
  std::vector<std::size_t> offset(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& set : rr.sets)
    for (NodeId v : set) ++offset[v + 1];
  for (std::size_t i = 1; i < offset.size(); ++i) offset[i] += offset[i - 1];
  std::vector<std::uint32_t> membership(rr.total_nodes());
  {
    std::vector<std::size_t> cursor(offset.begin(), offset.end() - 1);
    for (std::size_t s = 0; s < rr.sets.size(); ++s)
      for (NodeId v : rr.sets[s]) membership[cursor[v]++] = static_cast<std::uint32_t>(s);
  }

  std::vector<std::int64_t> gain(n);
  for (NodeId v = 0; v < n; ++v)
    gain[v] = static_cast<std::int64_t>(offset[v + 1] - offset[v]);
  std::vector<char> covered(rr.theta(), 0);
  std::size_t covered_count = 0;
  const double dn = static_cast<double>(n);
  const double dtheta = static_cast<double>(rr.theta());

  for (std::size_t pick = 0; pick < k; ++pick) {
    NodeId best = 0;
    std::int64_t best_gain = -1;
    for (NodeId v = 0; v < n; ++v) {
      if (gain[v] > best_gain) {
        best_gain = gain[v];
        best = v;
      }
    }
    sel.seeds.push_back(best);
    for (std::size_t idx = offset[best]; idx < offset[best + 1]; ++idx) {
      const std::uint32_t s = membership[idx];
      if (covered[s]) continue;
      covered[s] = 1;
      ++covered_count;
      for (NodeId v : rr.sets[s]) --gain[v];
    }
    gain[best] = -1;  // never pick twice
    sel.spread_after_rank.push_back(dn * static_cast<double>(covered_count) / dtheta);
  }
  sel.coverage_fraction = static_cast<double>(covered_count) / dtheta;
  sel.estimated_spread = dn * sel.coverage_fraction;
  return sel;
}

/// RR sample-size policy: a fixed count, or the TIM-style epsilon rule.
struct SampleBudget {
  enum class Mode { kFixed, kAuto };
  Mode mode = Mode::kFixed;
  std::size_t theta = 0;
  double epsilon = 0.0;

  static SampleBudget fixed(std::size_t theta) {
    if (theta == 0) throw ParameterError("theta must be >= 1");
    return {Mode::kFixed, theta, 0.0};
  }
  static SampleBudget auto_epsilon(double eps) {
    if (!(eps > 0.0)) throw ParameterError("epsilon must be > 0");
    return {Mode::kAuto, 0, eps};
  }
  /// Default for desk-scale runs: 200 samples per node.
  static SampleBudget default_for(NodeId n) {
    return fixed(std::max<std::size_t>(std::size_t{1}, std::size_t{200} * n));
  }
};

namespace detail {
inline double log_binomial(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

/// KPT estimation in the style of TIM's Algorithm 2: probe geometrically
/// growing sample counts; the width of an RR set R (sum of member degrees,
/// over total arcs) gives kappa(R) = 1 - (1 - w(R)/m)^k, whose mean estimates
/// the spread share of a size-k seed set. Stop when the mean clears the
/// current resolution 2^-i.
inline double estimate_kpt(const Graph& g, const EdgeProbabilities& p, std::size_t k,
                           std::uint64_t rng_seed) {
  const NodeId n = g.node_count();
  const double dn = static_cast<double>(n);
  const double m = static_cast<double>(g.arc_count());
  if (m == 0) return 1.0;  // no arcs: every seed reaches itself only
  const double log2n = std::log2(dn);
  const std::uint64_t probe_key = key_hash(rng_seed, kKptTag);
  std::size_t sample_index = 0;
  for (std::size_t i = 1; static_cast<double>(i) < log2n; ++i) {
    const double ci_raw = (6.0 * std::log(dn) + 6.0 * std::log(std::max(1.0, log2n))) *
                          std::pow(2.0, static_cast<double>(i));
    const std::size_t ci = static_cast<std::size_t>(std::ceil(ci_raw));
    double sum = 0.0;
    for (std::size_t j = 0; j < ci; ++j, ++sample_index) {
      const auto set = sample_rr_set(g, p, key_hash(probe_key, sample_index));
      double width = 0.0;
      for (NodeId v : set) width += static_cast<double>(g.degree(v));
      sum += 1.0 - std::pow(1.0 - width / m, static_cast<double>(k));
    }
    const double avg = sum / static_cast<double>(ci);
    if (avg > std::pow(2.0, -static_cast<double>(i))) return std::max(1.0, dn * avg / 2.0);
  }
  return 1.0;
}
}  // namespace detail

/// End-to-end TIM selection: sample RR sets per the budget, then greedy cover.
inline SeedSelection select_seeds(const Graph& g, const EdgeProbabilities& p, std::size_t k,
                                  const SampleBudget& budget, std::uint64_t rng_seed) {
  if (k < 1) throw ParameterError("k must be >= 1");
  const NodeId n = g.node_count();
  if (n < 1) throw ParameterError("graph has no nodes");

  std::size_t theta = budget.theta;
  double kpt = std::numeric_limits<double>::quiet_NaN();
  double lambda = std::numeric_limits<double>::quiet_NaN();
  if (budget.mode == SampleBudget::Mode::kAuto) {
    const double eps = budget.epsilon;
    const double dn = static_cast<double>(n);
    kpt = detail::estimate_kpt(g, p, std::min(k, static_cast<std::size_t>(n)), rng_seed);
    // lambda = (8 + 2 eps) n (ln n + ln C(n,k) + ln 2) / eps^2, with l = 1
    lambda = (8.0 + 2.0 * eps) * dn *
             (std::log(dn) + detail::log_binomial(dn, static_cast<double>(std::min<std::size_t>(k, n))) +
              std::log(2.0)) /
             (eps * eps);
    theta = static_cast<std::size_t>(std::ceil(lambda / kpt));
    theta = std::max<std::size_t>(theta, 1);
  }

  auto rr = sample_rr_sets(g, p, theta, rng_seed);
  SeedSelection sel = greedy_max_coverage(rr, n, k);
  sel.kpt_estimate = kpt;
  sel.lambda = lambda;
  return sel;
}

}  // namespace spreadnet
