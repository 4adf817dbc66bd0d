#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "spreadnet/common.hpp"
#include "spreadnet/features.hpp"
#include "spreadnet/graph.hpp"

namespace spreadnet {

enum class Metric {
  kDegree,
  kKCore,
  kHIndex,
  kEccentricity,
  kCloseness,
  kBetweenness,
  kPageRank,
  kWeightedDegree,
  kWeightedHIndex,
  kWeightedCloseness,
  kWeightedBetweenness,
  kWeightedPageRank,
};

inline constexpr std::array<Metric, 12> kAllMetrics = {
    Metric::kDegree,        Metric::kKCore,          Metric::kHIndex,
    Metric::kEccentricity,  Metric::kCloseness,      Metric::kBetweenness,
    Metric::kPageRank,      Metric::kWeightedDegree, Metric::kWeightedHIndex,
    Metric::kWeightedCloseness, Metric::kWeightedBetweenness, Metric::kWeightedPageRank,
};

inline const char* metric_name(Metric m) {
  switch (m) {
    case Metric::kDegree: return "degree";
    case Metric::kKCore: return "kcore";
    case Metric::kHIndex: return "hindex";
    case Metric::kEccentricity: return "ecc";
    case Metric::kCloseness: return "closeness";
    case Metric::kBetweenness: return "betweenness";
    case Metric::kPageRank: return "pagerank";
    case Metric::kWeightedDegree: return "wdegree";
    case Metric::kWeightedHIndex: return "whindex";
    case Metric::kWeightedCloseness: return "wcloseness";
    case Metric::kWeightedBetweenness: return "wbetweenness";
    case Metric::kWeightedPageRank: return "wpagerank";
  }
  return "?";
}

inline Metric metric_from_name(const std::string& name) {
  for (Metric m : kAllMetrics)
    if (name == metric_name(m)) return m;
  throw ParameterError("unknown metric: " + name);
}

inline bool metric_is_weighted(Metric m) {
  switch (m) {
    case Metric::kWeightedDegree:
    case Metric::kWeightedHIndex:
    case Metric::kWeightedCloseness:
    case Metric::kWeightedBetweenness:
    case Metric::kWeightedPageRank:
      return true;
    default:
      return false;
  }
}

/// Needs shortest-path distances, hence a connected (sub)graph.
inline bool metric_needs_connectivity(Metric m) {
  return m == Metric::kEccentricity || m == Metric::kCloseness ||
         m == Metric::kWeightedCloseness;
}

/// A named score vector, one value per node (NaN marks nodes the metric is
/// undefined for, e.g. outside the largest component).
struct CentralityScores {
  std::string metric;
  std::vector<double> values;
};

// ---------------------------------------------------------------------------
// Unweighted metrics

inline std::vector<double> degree_centrality(const Graph& g) {
  std::vector<double> v(g.node_count());
  for (NodeId i = 0; i < g.node_count(); ++i) v[i] = static_cast<double>(g.degree(i));
  return v;
}

/// Iterative peeling: repeatedly delete nodes of degree < k; a node's core
/// index is the largest k it survives to. Bucket implementation, O(n + m).
inline std::vector<double> k_core(const Graph& g) {
  const NodeId n = g.node_count();
  std::vector<std::size_t> deg(n);
  std::size_t max_deg = 0;
  for (NodeId i = 0; i < n; ++i) {
    deg[i] = g.degree(i);
    max_deg = std::max(max_deg, deg[i]);
  }
  // counting sort of nodes by degree
  std::vector<std::size_t> bin(max_deg + 2, 0);
  for (NodeId i = 0; i < n; ++i) ++bin[deg[i] + 1];
  for (std::size_t d = 1; d < bin.size(); ++d) bin[d] += bin[d - 1];
  std::vector<NodeId> order(n);
  std::vector<std::size_t> pos(n);
  {
    std::vector<std::size_t> cursor(bin.begin(), bin.end() - 1);
    for (NodeId i = 0; i < n; ++i) {
      pos[i] = cursor[deg[i]]++;
      order[pos[i]] = i;
    }
  }
  std::vector<std::size_t> start(bin.begin(), bin.end() - 1);  // first slot per degree bucket

  std::vector<double> core(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const NodeId v = order[idx];
    core[v] = static_cast<double>(deg[v]);
    for (NodeId w : g.neighbors(v)) {
      if (deg[w] > deg[v]) {
        // swap w to the front of its bucket, then shrink its degree
        const std::size_t wpos = pos[w];
        const std::size_t front = start[deg[w]];
        const NodeId u = order[front];
        if (u != w) {
          std::swap(order[wpos], order[front]);
          pos[w] = front;
          pos[u] = wpos;
        }
        ++start[deg[w]];
        --deg[w];
      }
    }
  }
  return core;
}

namespace detail {
/// max over r of min(cum_r, s_r) with pairs (w_r, s_r) sorted by s descending
/// (ties by ascending id, though the result does not depend on tie order).
inline double h_function(std::vector<std::pair<double, double>>& pairs) {
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& a, const auto& b) { return a.second > b.second; });
  double cum = 0.0, best = 0.0;
  for (const auto& [w, s] : pairs) {
    cum += w;
    best = std::max(best, std::min(cum, s));
  }
  return best;
}
}  // namespace detail

/// h_i = the largest h such that i has at least h neighbors of degree >= h.
inline std::vector<double> h_index(const Graph& g) {
  const NodeId n = g.node_count();
  std::vector<double> v(n);
  std::vector<std::size_t> nd;
  for (NodeId i = 0; i < n; ++i) {
    nd.clear();
    for (NodeId j : g.neighbors(i)) nd.push_back(g.degree(j));
    std::sort(nd.rbegin(), nd.rend());
    std::size_t h = 0;
    while (h < nd.size() && nd[h] >= h + 1) ++h;
    v[i] = static_cast<double>(h);
  }
  return v;
}

namespace detail {
inline void bfs_distances(const Graph& g, NodeId s, std::vector<std::int64_t>& dist,
                          std::vector<NodeId>& queue) {
  std::fill(dist.begin(), dist.end(), -1);
  queue.clear();
  queue.push_back(s);
  dist[s] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId v = queue[head];
    for (NodeId w : g.neighbors(v)) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
}

[[noreturn]] inline void throw_disconnected() {
  throw DegenerateInput(
      "graph is disconnected; distance metrics need a connected graph "
      "(apply largest_component first)");
}
}  // namespace detail

/// ECC(i) = max_j d_ij. Raw distances: larger means more peripheral.
inline std::vector<double> eccentricity(const Graph& g) {
  const NodeId n = g.node_count();
  std::vector<double> v(n, 0.0);
  std::vector<std::int64_t> dist(n);
  std::vector<NodeId> queue;
  for (NodeId s = 0; s < n; ++s) {
    detail::bfs_distances(g, s, dist, queue);
    if (queue.size() != n) detail::throw_disconnected();
    v[s] = static_cast<double>(*std::max_element(dist.begin(), dist.end()));
  }
  return v;
}

/// CC_i = (n-1) / sum_j d_ij, the reciprocal of the mean distance.
inline std::vector<double> closeness(const Graph& g) {
  const NodeId n = g.node_count();
  if (n < 2) throw DegenerateInput("closeness needs at least 2 nodes");
  std::vector<double> v(n, 0.0);
  std::vector<std::int64_t> dist(n);
  std::vector<NodeId> queue;
  for (NodeId s = 0; s < n; ++s) {
    detail::bfs_distances(g, s, dist, queue);
    if (queue.size() != n) detail::throw_disconnected();
    std::int64_t sum = 0;
    for (std::int64_t d : dist) sum += d;
    v[s] = static_cast<double>(n - 1) / static_cast<double>(sum);
  }
  return v;
}

/// Brandes' algorithm; each unordered pair {s, t} is counted once, no
/// normalization. Disconnected graphs are fine (unreachable pairs contribute
/// nothing).
inline std::vector<double> betweenness(const Graph& g) {
  const NodeId n = g.node_count();
  std::vector<double> bc(n, 0.0);
  std::vector<std::int64_t> dist(n);
  std::vector<double> sigma(n), delta(n);
  std::vector<std::vector<NodeId>> pred(n);
  std::vector<NodeId> order;

  for (NodeId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto& p : pred) p.clear();
    order.clear();

    dist[s] = 0;
    sigma[s] = 1.0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const NodeId v = order[head];
      for (NodeId w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          order.push_back(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          pred[w].push_back(v);
        }
      }
    }
    for (std::size_t idx = order.size(); idx-- > 1;) {  // reverse BFS order, skip s
      const NodeId w = order[idx];
      for (NodeId v : pred[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      bc[w] += delta[w];
    }
  }
  for (double& x : bc) x *= 0.5;  // ordered pairs -> unordered
  return bc;
}

struct PowerIterationResult {
  enum class Status {
    kConverged,       // successive iterates within tol
    kCycleAveraged,   // period-2 limit cycle detected; values are the cycle mean
    kMaxIterations,   // stopped at the iteration cap without either signal
  };

  std::vector<double> values;
  Status status = Status::kConverged;
  std::size_t iterations = 0;

  bool converged() const { return status != Status::kMaxIterations; }
};

namespace detail {
/// Power iteration for (weighted) PageRank. `share[arc(i,j)]` is the fraction
/// of j's value handed to i along arc j->i, precomputed so each step is one
/// pass over the arcs. Bipartite structures oscillate with period 2 under the
/// undamped update; that limit cycle is detected and averaged, which matches
/// the random walk's stationary distribution.
inline PowerIterationResult pagerank_iterate(const Graph& g,
                                             const std::vector<double>& incoming_share,
                                             double tol, std::size_t max_iter) {
  const NodeId n = g.node_count();
  std::vector<double> cur(n, 1.0), prev, next(n);
  PowerIterationResult out;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    for (NodeId i = 0; i < n; ++i) {
      const auto row = g.neighbors(i);
      const std::size_t base = g.arc_offset(i);
      double acc = 0.0;
      for (std::size_t s = 0; s < row.size(); ++s)
        acc += cur[row[s]] * incoming_share[base + s];
      next[i] = acc;
    }
    out.iterations = it;
    double d1 = 0.0, d2 = 0.0;
    for (NodeId i = 0; i < n; ++i) {
      d1 = std::max(d1, std::abs(next[i] - cur[i]));
      if (!prev.empty()) d2 = std::max(d2, std::abs(next[i] - prev[i]));
    }
    if (d1 < tol) {
      out.status = PowerIterationResult::Status::kConverged;
      out.values = next;
      return out;
    }
    if (!prev.empty() && d2 < tol) {
      out.status = PowerIterationResult::Status::kCycleAveraged;
      out.values.resize(n);
      for (NodeId i = 0; i < n; ++i) out.values[i] = 0.5 * (next[i] + cur[i]);
      return out;
    }
    prev = cur;
    std::swap(cur, next);
  }
  out.status = PowerIterationResult::Status::kMaxIterations;
  out.values = cur;
  return out;
}
}  // namespace detail

/// Undamped PageRank: PR_i <- sum_{j in N(i)} PR_j / k_j, starting from all
/// ones. The total sum n is conserved every step.
inline PowerIterationResult pagerank(const Graph& g, double tol = 1e-10,
                                     std::size_t max_iter = 1000) {
  const NodeId n = g.node_count();
  std::vector<double> share(g.arc_count());
  for (NodeId i = 0; i < n; ++i) {
    if (g.degree(i) == 0)
      throw ParameterError("pagerank undefined: node " + std::to_string(i) + " is isolated");
    const auto row = g.neighbors(i);
    const std::size_t base = g.arc_offset(i);
    for (std::size_t s = 0; s < row.size(); ++s)
      share[base + s] = 1.0 / static_cast<double>(g.degree(row[s]));
  }
  return detail::pagerank_iterate(g, share, tol, max_iter);
}

// ---------------------------------------------------------------------------
// Weighted metrics (arc weight = transmission probability)

/// WD_i = sum of p over i's out-arcs (out-strength).
inline std::vector<double> weighted_degree(const Graph& g, const EdgeProbabilities& p) {
  if (p.size() != g.arc_count()) throw ParameterError("probability table does not match graph");
  const NodeId n = g.node_count();
  std::vector<double> v(n, 0.0);
  for (NodeId i = 0; i < n; ++i) {
    const std::size_t base = g.arc_offset(i);
    const std::size_t deg = g.degree(i);
    double acc = 0.0;
    for (std::size_t s = 0; s < deg; ++s) acc += p.at(base + s);
    v[i] = acc;
  }
  return v;
}

/// The H function over (arc weight, neighbor out-strength) pairs: neighbors
/// sorted by descending out-strength, f(x) = s_r on the r-th cumulative-weight
/// interval, result sup{x > 0 : f(x) >= x} = max_r min(cum_r, s_r).
inline std::vector<double> weighted_h_index(const Graph& g, const EdgeProbabilities& p) {
  if (p.size() != g.arc_count()) throw ParameterError("probability table does not match graph");
  const NodeId n = g.node_count();
  const auto strength = weighted_degree(g, p);
  std::vector<double> v(n, 0.0);
  std::vector<std::pair<double, double>> pairs;
  for (NodeId i = 0; i < n; ++i) {
    pairs.clear();
    const auto row = g.neighbors(i);
    const std::size_t base = g.arc_offset(i);
    for (std::size_t s = 0; s < row.size(); ++s)
      pairs.emplace_back(p.at(base + s), strength[row[s]]);
    v[i] = detail::h_function(pairs);
  }
  return v;
}

namespace detail {
struct DijkstraScratch {
  std::vector<double> dist;
  std::vector<double> sigma;
  std::vector<std::vector<NodeId>> pred;
  std::vector<NodeId> order;  // settle order

  void reset(NodeId n) {
    dist.assign(n, std::numeric_limits<double>::infinity());
    sigma.assign(n, 0.0);
    pred.assign(n, {});
    order.clear();
  }
};

/// Dijkstra with path counting. Weights are the arc probabilities taken
/// literally as lengths (non-negative). Equal-length alternatives accumulate
/// into sigma/pred; equality is exact, which is reproducible because every
/// comparison sees sums built in the same (prefix) order.
inline void dijkstra_paths(const Graph& g, const EdgeProbabilities& p, NodeId s,
                           DijkstraScratch& scratch) {
  scratch.reset(g.node_count());
  auto& dist = scratch.dist;
  auto& sigma = scratch.sigma;
  using Entry = std::pair<double, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> pq;
  std::vector<char> settled(g.node_count(), 0);
  dist[s] = 0.0;
  sigma[s] = 1.0;
  pq.emplace(0.0, s);
  while (!pq.empty()) {
    const auto [d, v] = pq.top();
    pq.pop();
    if (settled[v]) continue;
    settled[v] = 1;
    scratch.order.push_back(v);
    const auto row = g.neighbors(v);
    const std::size_t base = g.arc_offset(v);
    for (std::size_t k = 0; k < row.size(); ++k) {
      const NodeId w = row[k];
      const double nd = d + p.at(base + k);
      if (nd < dist[w]) {
        dist[w] = nd;
        sigma[w] = sigma[v];
        scratch.pred[w].assign(1, v);
        pq.emplace(nd, w);
      } else if (nd == dist[w] && !settled[w]) {
        sigma[w] += sigma[v];
        scratch.pred[w].push_back(v);
      }
    }
  }
}
}  // namespace detail

/// WCC_i = 1 / sum_j d^w_ij with d^w the probability-weighted distances.
inline std::vector<double> weighted_closeness(const Graph& g, const EdgeProbabilities& p) {
  if (p.size() != g.arc_count()) throw ParameterError("probability table does not match graph");
  const NodeId n = g.node_count();
  if (n < 2) throw DegenerateInput("weighted closeness needs at least 2 nodes");
  std::vector<double> v(n, 0.0);
  detail::DijkstraScratch scratch;
  for (NodeId s = 0; s < n; ++s) {
    detail::dijkstra_paths(g, p, s, scratch);
    if (scratch.order.size() != n) detail::throw_disconnected();
    double sum = 0.0;
    for (NodeId t = 0; t < n; ++t) sum += scratch.dist[t];
    v[s] = 1.0 / sum;
  }
  return v;
}

/// Brandes over probability-weighted shortest paths; unordered pairs counted
/// once, as in the unweighted version.
inline std::vector<double> weighted_betweenness(const Graph& g, const EdgeProbabilities& p) {
  if (p.size() != g.arc_count()) throw ParameterError("probability table does not match graph");
  const NodeId n = g.node_count();
  std::vector<double> bc(n, 0.0), delta(n);
  detail::DijkstraScratch scratch;
  for (NodeId s = 0; s < n; ++s) {
    detail::dijkstra_paths(g, p, s, scratch);
    std::fill(delta.begin(), delta.end(), 0.0);
    for (std::size_t idx = scratch.order.size(); idx-- > 1;) {
      const NodeId w = scratch.order[idx];
      for (NodeId v : scratch.pred[w])
        delta[v] += scratch.sigma[v] / scratch.sigma[w] * (1.0 + delta[w]);
      bc[w] += delta[w];
    }
  }
  for (double& x : bc) x *= 0.5;
  return bc;
}

/// Weighted PageRank: node j hands WPR_j * p_ji / WD_j to neighbor i, i.e.
/// value flows along arcs proportionally to their weight; the total stays n.
inline PowerIterationResult weighted_pagerank(const Graph& g, const EdgeProbabilities& p,
                                              double tol = 1e-10, std::size_t max_iter = 1000) {
  if (p.size() != g.arc_count()) throw ParameterError("probability table does not match graph");
  const NodeId n = g.node_count();
  const auto strength = weighted_degree(g, p);
  for (NodeId i = 0; i < n; ++i)
    if (!(strength[i] > 0.0))
      throw ParameterError("weighted pagerank undefined: node " + std::to_string(i) +
                           " has zero out-strength");
  std::vector<double> share(g.arc_count());
  for (NodeId i = 0; i < n; ++i) {
    const auto row = g.neighbors(i);
    const std::size_t base = g.arc_offset(i);
    for (std::size_t s = 0; s < row.size(); ++s) {
      const NodeId j = row[s];
      share[base + s] = p.at(g.arc_index(j, i)) / strength[j];  // j's share sent to i
    }
  }
  return detail::pagerank_iterate(g, share, tol, max_iter);
}

// ---------------------------------------------------------------------------
// Registry dispatch and the "all metrics" convenience

/// Computes one metric over the whole graph. Distance-based metrics and the
/// PageRank family fall back to the applicable subgraph (largest component /
/// non-isolated nodes) and mark excluded nodes NaN.
inline CentralityScores compute_metric(const Graph& g, const EdgeProbabilities& p, Metric m);

struct AllMetrics {
  std::array<std::vector<double>, 12> values;  // indexed by kAllMetrics order
  PowerIterationResult::Status pagerank_status = PowerIterationResult::Status::kConverged;
  PowerIterationResult::Status weighted_pagerank_status = PowerIterationResult::Status::kConverged;

  const std::vector<double>& of(Metric m) const {
    return values[static_cast<std::size_t>(m)];
  }
};

namespace detail {
/// Runs `fn` on the largest component if the graph is disconnected and
/// scatters the result back, NaN for dropped nodes.
template <typename Fn>
std::vector<double> on_largest_component(const Graph& g, Fn&& fn) {
  if (is_connected(g)) return fn(g, nullptr);
  const auto lc = largest_component(g);
  const auto sub_values = fn(lc.graph, &lc);
  std::vector<double> v(g.node_count(), std::numeric_limits<double>::quiet_NaN());
  for (NodeId i = 0; i < lc.graph.node_count(); ++i) v[lc.to_original[i]] = sub_values[i];
  return v;
}

/// PageRank family with isolated nodes dropped (their value is undefined)
/// and reported as NaN.
template <typename Fn>
std::pair<std::vector<double>, PowerIterationResult::Status> pagerank_padded(const Graph& g,
                                                                             Fn&& fn) {
  std::vector<char> keep(g.node_count());
  bool any_isolated = false;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    keep[i] = g.degree(i) > 0 ? 1 : 0;
    any_isolated = any_isolated || !keep[i];
  }
  if (!any_isolated) {
    auto r = fn(g, nullptr);
    return {std::move(r.values), r.status};
  }
  const auto sub = induced_subgraph(g, keep);
  const auto r = fn(sub.graph, &sub);
  std::vector<double> v(g.node_count(), std::numeric_limits<double>::quiet_NaN());
  for (NodeId i = 0; i < sub.graph.node_count(); ++i) v[sub.to_original[i]] = r.values[i];
  return {std::move(v), r.status};
}
}  // namespace detail

inline AllMetrics compute_all_metrics(const Graph& g, const EdgeProbabilities& p,
                                      double tol = 1e-10, std::size_t max_iter = 1000) {
  AllMetrics out;
  const auto set = [&out](Metric m, std::vector<double> v) {
    out.values[static_cast<std::size_t>(m)] = std::move(v);
  };

  set(Metric::kDegree, degree_centrality(g));
  set(Metric::kKCore, k_core(g));
  set(Metric::kHIndex, h_index(g));
  set(Metric::kBetweenness, betweenness(g));
  set(Metric::kWeightedDegree, weighted_degree(g, p));
  set(Metric::kWeightedHIndex, weighted_h_index(g, p));
  set(Metric::kWeightedBetweenness, weighted_betweenness(g, p));

  set(Metric::kEccentricity, detail::on_largest_component(
      g, [](const Graph& sub, const InducedSubgraph*) { return eccentricity(sub); }));
  set(Metric::kCloseness, detail::on_largest_component(
      g, [](const Graph& sub, const InducedSubgraph*) { return closeness(sub); }));
  set(Metric::kWeightedCloseness,
      detail::on_largest_component(g, [&](const Graph& sub, const InducedSubgraph* lc) {
        if (!lc) return weighted_closeness(sub, p);
        return weighted_closeness(sub, project_probabilities(g, p, sub, lc->to_original));
      }));

  auto [pr, pr_status] = detail::pagerank_padded(
      g, [&](const Graph& sub, const InducedSubgraph*) { return pagerank(sub, tol, max_iter); });
  out.pagerank_status = pr_status;
  set(Metric::kPageRank, std::move(pr));

  auto [wpr, wpr_status] =
      detail::pagerank_padded(g, [&](const Graph& sub, const InducedSubgraph* isub) {
        if (!isub) return weighted_pagerank(sub, p, tol, max_iter);
        return weighted_pagerank(sub, project_probabilities(g, p, sub, isub->to_original), tol,
                                 max_iter);
      });
  out.weighted_pagerank_status = wpr_status;
  set(Metric::kWeightedPageRank, std::move(wpr));
  return out;
}

inline CentralityScores compute_metric(const Graph& g, const EdgeProbabilities& p, Metric m) {
  CentralityScores out;
  out.metric = metric_name(m);
  switch (m) {
    case Metric::kDegree: out.values = degree_centrality(g); break;
    case Metric::kKCore: out.values = k_core(g); break;
    case Metric::kHIndex: out.values = h_index(g); break;
    case Metric::kBetweenness: out.values = betweenness(g); break;
    case Metric::kWeightedDegree: out.values = weighted_degree(g, p); break;
    case Metric::kWeightedHIndex: out.values = weighted_h_index(g, p); break;
    case Metric::kWeightedBetweenness: out.values = weighted_betweenness(g, p); break;
    case Metric::kEccentricity:
      out.values = detail::on_largest_component(
          g, [](const Graph& sub, const InducedSubgraph*) { return eccentricity(sub); });
      break;
    case Metric::kCloseness:
      out.values = detail::on_largest_component(
          g, [](const Graph& sub, const InducedSubgraph*) { return closeness(sub); });
      break;
    case Metric::kWeightedCloseness:
      out.values = detail::on_largest_component(g, [&](const Graph& sub, const InducedSubgraph* lc) {
        if (!lc) return weighted_closeness(sub, p);
        return weighted_closeness(sub, project_probabilities(g, p, sub, lc->to_original));
      });
      break;
    case Metric::kPageRank:
      out.values = detail::pagerank_padded(g, [&](const Graph& sub, const InducedSubgraph*) {
                     return pagerank(sub);
                   }).first;
      break;
    case Metric::kWeightedPageRank:
      out.values = detail::pagerank_padded(g, [&](const Graph& sub, const InducedSubgraph* isub) {
                     if (!isub) return weighted_pagerank(sub, p);
                     return weighted_pagerank(sub, project_probabilities(g, p, sub, isub->to_original));
                   }).first;
      break;
  }
  return out;
}

}  // namespace spreadnet
