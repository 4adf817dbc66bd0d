#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "spreadnet/common.hpp"
#include "spreadnet/features.hpp"
#include "spreadnet/graph.hpp"
#include "spreadnet/rng.hpp"

namespace spreadnet {

namespace detail {
constexpr std::uint64_t kArcDrawTag = 0x6172632d64726177ull;
constexpr std::uint64_t kRunTag = 0x72756e2d2d2d2d2dull;
constexpr std::uint64_t kNodeCapTag = 0x6361706163697479ull;
}  // namespace detail

struct CascadeOutcome {
  std::vector<NodeId> infected;  // sorted; includes the seeds
  std::size_t rounds = 0;        // waves that produced at least one infection
};

namespace detail {
inline void check_cascade_inputs(const Graph& g, const EdgeProbabilities& p,
                                 std::span<const NodeId> seeds, std::span<const char> removed) {
  if (p.size() != g.arc_count()) throw ParameterError("probability table does not match graph");
  if (seeds.empty()) throw ParameterError("seed set is empty");
  if (!removed.empty() && removed.size() != g.node_count())
    throw ParameterError("removed mask does not match graph size");
  for (double q : p.by_arc)
    if (!(q >= 0.0 && q <= 1.0)) throw ParameterError("probabilities must be in [0, 1]");
  for (NodeId s : seeds) {
    if (s >= g.node_count()) throw ParameterError("seed id out of range");
    if (!removed.empty() && removed[s]) throw ParameterError("seed node is removed");
  }
}

/// Core wave loop; inputs assumed validated (hot path of the MC estimators).
inline CascadeOutcome run_cascade(const Graph& g, const EdgeProbabilities& p,
                                  std::span<const NodeId> seeds, std::uint64_t rng_seed,
                                  std::span<const char> removed) {
  const NodeId n = g.node_count();
  const std::uint64_t arc_key = key_hash(rng_seed, kArcDrawTag);
  std::vector<char> infected(n, 0);
  std::vector<NodeId> frontier, next;
  for (NodeId s : seeds) {
    if (!infected[s]) {
      infected[s] = 1;
      frontier.push_back(s);
    }
  }

  CascadeOutcome out;
  while (!frontier.empty()) {
    next.clear();
    for (NodeId i : frontier) {
      const auto row = g.neighbors(i);
      const std::size_t base = g.arc_offset(i);
      for (std::size_t s = 0; s < row.size(); ++s) {
        const NodeId j = row[s];
        if (infected[j]) continue;
        if (!removed.empty() && removed[j]) continue;
        const std::size_t arc = base + s;
        if (keyed_unit(arc_key, arc) < p.at(arc)) {
          infected[j] = 1;
          next.push_back(j);
        }
      }
    }
    if (next.empty()) break;
    ++out.rounds;
    frontier.swap(next);
  }

  for (NodeId i = 0; i < n; ++i)
    if (infected[i]) out.infected.push_back(i);
  return out;
}
}  // namespace detail

/// Independent-cascade simulation in synchronous waves. A node infected in
/// wave t gets exactly one chance, in wave t+1, to infect each neighbor that
/// is still uninfected; the attempt on arc i->j succeeds with p.at(arc(i,j)).
///
/// Every arc's Bernoulli draw is a pure function of (rng_seed, arc slot), so
/// the outcome equals seed-reachability in the "live arc" graph that keeps
/// arc a iff u_a < p_a. That makes results independent of traversal order and
/// lets callers couple runs: reusing a seed while raising probabilities can
/// only grow the infected set.
///
/// `removed` (optional, node_count entries) marks nodes that neither receive
/// nor transmit; seeds must not be removed.
inline CascadeOutcome simulate_cascade(const Graph& g, const EdgeProbabilities& p,
                                       std::span<const NodeId> seeds, std::uint64_t rng_seed,
                                       std::span<const char> removed = {}) {
  detail::check_cascade_inputs(g, p, seeds, removed);
  return detail::run_cascade(g, p, seeds, rng_seed, removed);
}

struct SpreadEstimate {
  double mean_fraction = 0.0;   // mean infected share of all nodes
  double std_fraction = 0.0;    // sample standard deviation (ddof = 1)
  std::size_t runs = 0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
};

namespace detail {
inline SpreadEstimate summarize_fractions(const std::vector<double>& xs) {
  SpreadEstimate e;
  e.runs = xs.size();
  double sum = 0;
  for (double v : xs) sum += v;
  e.mean_fraction = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0;
    for (double v : xs) {
      const double d = v - e.mean_fraction;
      ss += d * d;
    }
    e.std_fraction = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  const double half = 1.96 * e.std_fraction / std::sqrt(static_cast<double>(xs.size()));
  e.ci95_low = e.mean_fraction - half;
  e.ci95_high = e.mean_fraction + half;
  return e;
}
}  // namespace detail

/// Monte Carlo estimate of the expected infected fraction. Run r uses the
/// arc-draw stream keyed by (rng_seed, r); results do not depend on the order
/// runs are executed in.
inline SpreadEstimate estimate_spread(const Graph& g, const EdgeProbabilities& p,
                                      std::span<const NodeId> seeds, std::size_t runs,
                                      std::uint64_t rng_seed) {
  if (runs == 0) throw ParameterError("runs must be >= 1");
  detail::check_cascade_inputs(g, p, seeds, {});
  const double n = static_cast<double>(g.node_count());
  std::vector<double> fractions(runs);
  for (std::size_t r = 0; r < runs; ++r) {
    const auto outcome = detail::run_cascade(g, p, seeds, key_hash(rng_seed, detail::kRunTag, r), {});
    fractions[r] = static_cast<double>(outcome.infected.size()) / n;
  }
  return detail::summarize_fractions(fractions);
}

/// Spreading capacity of every node: expected infected fraction when that
/// node is the sole seed. Node i's runs are keyed by (rng_seed, i, run); the
/// per-node estimates are mutually independent and order-free.
inline std::vector<SpreadEstimate> per_node_capacity(const Graph& g, const EdgeProbabilities& p,
                                                     std::size_t runs, std::uint64_t rng_seed) {
  const NodeId n = g.node_count();
  std::vector<SpreadEstimate> out(n);
  for (NodeId i = 0; i < n; ++i) {
    const NodeId seed[1] = {i};
    out[i] = estimate_spread(g, p, seed, runs, key_hash(rng_seed, detail::kNodeCapTag, i));
  }
  return out;
}

/// Exact expected infected count by enumerating every configuration of the
/// stochastic arcs (those with 0 < p < 1). Arcs with p = 0 or p = 1 are
/// resolved directly. At most 24 stochastic arcs are allowed; beyond that the
/// enumeration would be unreasonably large and a CapacityError is thrown.
inline double exact_spread(const Graph& g, const EdgeProbabilities& p,
                           std::span<const NodeId> seeds) {
  const NodeId n = g.node_count();
  if (p.size() != g.arc_count()) throw ParameterError("probability table does not match graph");
  if (seeds.empty()) throw ParameterError("seed set is empty");
  for (NodeId s : seeds)
    if (s >= n) throw ParameterError("seed id out of range");

  // Split arcs into always-live (p = 1) and stochastic (0 < p < 1) ones.
  std::vector<std::vector<NodeId>> sure(n);
  std::vector<std::vector<std::pair<unsigned, NodeId>>> chance(n);  // (bit, target)
  std::vector<double> prob_live;
  for (NodeId i = 0; i < n; ++i) {
    const auto row = g.neighbors(i);
    const std::size_t base = g.arc_offset(i);
    for (std::size_t s = 0; s < row.size(); ++s) {
      const double q = p.at(base + s);
      if (!(q >= 0.0 && q <= 1.0)) throw ParameterError("probabilities must be in [0, 1]");
      if (q == 1.0) {
        sure[i].push_back(row[s]);
      } else if (q > 0.0) {
        if (prob_live.size() >= 24) throw CapacityError("more than 24 stochastic arcs");
        chance[i].emplace_back(static_cast<unsigned>(prob_live.size()), row[s]);
        prob_live.push_back(q);
      }
    }
  }

  const unsigned bits = static_cast<unsigned>(prob_live.size());
  std::vector<char> reached(n);
  std::vector<NodeId> stack;
  double expected = 0.0;
  for (std::uint64_t config = 0; config < (std::uint64_t{1} << bits); ++config) {
    double weight = 1.0;
    for (unsigned b = 0; b < bits; ++b)
      weight *= (config >> b) & 1 ? prob_live[b] : 1.0 - prob_live[b];

    std::fill(reached.begin(), reached.end(), 0);
    stack.assign(seeds.begin(), seeds.end());
    std::size_t count = 0;
    for (NodeId s : seeds) {
      if (!reached[s]) {
        reached[s] = 1;
        ++count;
      }
    }
    // seeds may repeat; stack can hold duplicates, reached[] guards the count
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      for (NodeId w : sure[v]) {
        if (!reached[w]) {
          reached[w] = 1;
          ++count;
          stack.push_back(w);
        }
      }
      for (const auto& [bit, w] : chance[v]) {
        if (!reached[w] && ((config >> bit) & 1)) {
          reached[w] = 1;
          ++count;
          stack.push_back(w);
        }
      }
    }
    expected += weight * static_cast<double>(count);
  }
  return expected;
}

}  // namespace spreadnet
