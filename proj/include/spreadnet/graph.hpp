#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "spreadnet/common.hpp"
#include "spreadnet/rng.hpp"

namespace spreadnet {

/// Immutable simple undirected graph with contiguous node ids [0, n).
///
/// Adjacency is CSR: per-node neighbor lists, each sorted ascending, laid out
/// in one flat array. Every undirected edge {i,j} occupies two directed arc
/// slots (i->j at i's row, j->i at j's row); per-arc quantities such as
/// transmission probabilities are vectors indexed by those slots.
class Graph {
 public:
  Graph() = default;

  /// Builds from a deduplicated list of undirected edges. Throws
  /// ParameterError on out-of-range endpoints, self-loops or duplicates;
  /// callers with dirty input should go through load_edge_list instead.
  static Graph from_edge_list(NodeId n, std::vector<std::pair<NodeId, NodeId>> edges) {
    Graph g;
    g.n_ = n;
    for (auto& [a, b] : edges) {
      if (a >= n || b >= n) throw ParameterError("edge endpoint out of range");
      if (a == b) throw ParameterError("self-loop not allowed");
      if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
      throw ParameterError("duplicate edge not allowed");
    g.edges_ = std::move(edges);

    std::vector<std::size_t> deg(n, 0);
    for (const auto& [a, b] : g.edges_) {
      ++deg[a];
      ++deg[b];
    }
    g.offsets_.assign(n + 1, 0);
    for (NodeId i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + deg[i];
    g.adj_.resize(g.offsets_[n]);
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [a, b] : g.edges_) {
      g.adj_[cursor[a]++] = b;
      g.adj_[cursor[b]++] = a;
    }
    // Edges are sorted lexicographically, so each row comes out sorted except
    // for the interleaving of the two endpoints' perspectives; sort each row
    // to be safe (rows are short, this is cheap).
    for (NodeId i = 0; i < n; ++i)
      std::sort(g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
                g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]));
    return g;
  }

  NodeId node_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t arc_count() const { return adj_.size(); }

  std::span<const NodeId> neighbors(NodeId i) const {
    return {adj_.data() + offsets_[i], adj_.data() + offsets_[i + 1]};
  }

  std::size_t degree(NodeId i) const { return offsets_[i + 1] - offsets_[i]; }

  /// First arc slot of node i's row; slots [arc_offset(i), arc_offset(i+1))
  /// hold the arcs i -> neighbors(i) in ascending neighbor order.
  std::size_t arc_offset(NodeId i) const { return offsets_[i]; }

  /// Slot of the directed arc i -> j. Throws ParameterError if absent.
  std::size_t arc_index(NodeId i, NodeId j) const {
    const auto row = neighbors(i);
    const auto it = std::lower_bound(row.begin(), row.end(), j);
    if (it == row.end() || *it != j)
      throw ParameterError("no edge " + std::to_string(i) + "-" + std::to_string(j));
    return offsets_[i] + static_cast<std::size_t>(it - row.begin());
  }

  bool has_edge(NodeId i, NodeId j) const {
    const auto row = neighbors(i);
    return std::binary_search(row.begin(), row.end(), j);
  }

  /// Canonical edge list: (min, max) pairs in lexicographic order.
  const std::vector<std::pair<NodeId, NodeId>>& edges() const { return edges_; }

 private:
  NodeId n_ = 0;
  std::vector<std::pair<NodeId, NodeId>> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adj_;
};

struct LoadStats {
  std::size_t lines_read = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
};

/// Reads a whitespace-separated edge list. Lines whose first non-blank
/// character is '#' or '%' and blank lines are skipped. Node labels are
/// arbitrary unsigned integers and are remapped to 0..n-1 in order of first
/// appearance. Self-loops and repeated edges are dropped (counted in stats).
inline Graph load_edge_list(std::istream& in, LoadStats* stats = nullptr) {
  LoadStats local;
  std::unordered_map<std::uint64_t, NodeId> remap;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::unordered_set<std::uint64_t> seen;

  const auto intern = [&](std::uint64_t label) {
    auto [it, inserted] = remap.try_emplace(label, static_cast<NodeId>(remap.size()));
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#' || line[pos] == '%') continue;
    ++local.lines_read;

    std::uint64_t label[2];
    int tokens = 0;
    const char* const end = line.data() + line.size();
    const char* cur = line.data() + pos;
    while (cur < end) {
      while (cur < end && (*cur == ' ' || *cur == '\t' || *cur == '\r')) ++cur;
      if (cur >= end) break;
      if (tokens == 2) throw ParseError(line_no, "expected two fields");
      auto [next, ec] = std::from_chars(cur, end, label[tokens]);
      if (ec != std::errc() || (next < end && *next != ' ' && *next != '\t' && *next != '\r'))
        throw ParseError(line_no, "malformed node label");
      cur = next;
      ++tokens;
    }
    if (tokens != 2) throw ParseError(line_no, "expected two fields");

    const NodeId a = intern(label[0]);
    const NodeId b = intern(label[1]);
    if (a == b) {
      ++local.self_loops_dropped;
      continue;
    }
    const NodeId lo = std::min(a, b), hi = std::max(a, b);
    if (!seen.insert((static_cast<std::uint64_t>(lo) << 32) | hi).second) {
      ++local.duplicates_dropped;
      continue;
    }
    edges.emplace_back(lo, hi);
  }
  if (remap.empty()) throw ParseError("edge list is empty");
  if (stats) *stats = local;
  return Graph::from_edge_list(static_cast<NodeId>(remap.size()), std::move(edges));
}

inline Graph load_edge_list_file(const std::string& path, LoadStats* stats = nullptr) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return load_edge_list(in, stats);
}

/// Writes the canonical serialization: one "min max" pair per line, pairs in
/// lexicographic order, each line LF-terminated. Two graphs are equal iff
/// their serializations are byte-identical.
inline void serialize_edge_list(const Graph& g, std::ostream& out) {
  for (const auto& [a, b] : g.edges()) out << a << ' ' << b << '\n';
}

/// Watts-Strogatz small world: ring lattice where each node links to its k
/// nearest neighbors, then every lattice edge is rewired with probability
/// rewire_p (new endpoint uniform, avoiding self-loops and duplicates; a
/// rewire that cannot find a valid endpoint is skipped). Edge count is
/// exactly n*k/2 either way.
inline Graph generate_small_world(NodeId n, NodeId k, double rewire_p, std::uint64_t rng_seed) {
  if (n < 3) throw ParameterError("small-world generator needs n >= 3");
  if (k < 2 || k % 2 != 0) throw ParameterError("small-world k must be even and >= 2");
  if (k >= n) throw ParameterError("small-world k must be < n");
  if (!(rewire_p >= 0.0 && rewire_p <= 1.0))
    throw ParameterError("rewire probability must be in [0, 1]");

  std::vector<std::unordered_set<NodeId>> adj(n);
  const auto add = [&](NodeId a, NodeId b) {
    adj[a].insert(b);
    adj[b].insert(a);
  };
  const auto remove = [&](NodeId a, NodeId b) {
    adj[a].erase(b);
    adj[b].erase(a);
  };
  for (NodeId j = 1; j <= k / 2; ++j)
    for (NodeId i = 0; i < n; ++i) add(i, (i + j) % n);

  constexpr std::uint64_t kRewireTag = 0x5753726577697265ull;
  StreamRng rng(key_hash(rng_seed, kRewireTag));
  for (NodeId j = 1; j <= k / 2; ++j) {
    for (NodeId i = 0; i < n; ++i) {
      if (!rng.next_bernoulli(rewire_p)) continue;
      if (adj[i].size() >= n - 1) continue;  // saturated, nothing valid to rewire to
      NodeId w = static_cast<NodeId>(rng.next_below(n));
      while (w == i || adj[i].count(w) != 0) w = static_cast<NodeId>(rng.next_below(n));
      remove(i, (i + j) % n);
      add(i, w);
    }
  }

  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(static_cast<std::size_t>(n) * k / 2);
  for (NodeId i = 0; i < n; ++i)
    for (NodeId w : adj[i])
      if (i < w) edges.emplace_back(i, w);
  return Graph::from_edge_list(n, std::move(edges));
}

struct StructuralSummary {
  NodeId nodes = 0;
  std::size_t edges = 0;
  double avg_degree = 0.0;
  double degree_assortativity = 0.0;  // Pearson over arc endpoint degrees; 0 if undefined
  double avg_clustering = 0.0;        // mean of local clustering coefficients
};

inline double local_clustering(const Graph& g, NodeId i) {
  const auto row = g.neighbors(i);
  const std::size_t k = row.size();
  if (k < 2) return 0.0;
  std::size_t links = 0;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      if (g.has_edge(row[a], row[b])) ++links;
  return 2.0 * static_cast<double>(links) / (static_cast<double>(k) * static_cast<double>(k - 1));
}

inline StructuralSummary structural_summary(const Graph& g) {
  StructuralSummary s;
  s.nodes = g.node_count();
  s.edges = g.edge_count();
  const NodeId n = g.node_count();
  if (n == 0) return s;
  s.avg_degree = 2.0 * static_cast<double>(s.edges) / static_cast<double>(n);

  // Degree assortativity: Pearson correlation of (deg(i), deg(j)) over all
  // directed arcs. Zero variance (regular graph) has no defined value;
  // report 0 by convention.
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  const double arcs = static_cast<double>(g.arc_count());
  if (arcs > 0) {
    for (NodeId i = 0; i < n; ++i) {
      const double di = static_cast<double>(g.degree(i));
      for (NodeId j : g.neighbors(i)) {
        const double dj = static_cast<double>(g.degree(j));
        sx += di;
        sy += dj;
        sxx += di * di;
        syy += dj * dj;
        sxy += di * dj;
      }
    }
    const double cov = sxy / arcs - (sx / arcs) * (sy / arcs);
    const double vx = sxx / arcs - (sx / arcs) * (sx / arcs);
    const double vy = syy / arcs - (sy / arcs) * (sy / arcs);
    if (vx > 0 && vy > 0) s.degree_assortativity = cov / std::sqrt(vx * vy);
  }

  double csum = 0;
  for (NodeId i = 0; i < n; ++i) csum += local_clustering(g, i);
  s.avg_clustering = csum / static_cast<double>(n);
  return s;
}

/// Connected-component label per node (labels are 0-based in order of the
/// smallest node id in each component).
inline std::vector<NodeId> component_labels(const Graph& g) {
  const NodeId n = g.node_count();
  std::vector<NodeId> label(n, n);
  std::vector<NodeId> queue;
  NodeId next = 0;
  for (NodeId s = 0; s < n; ++s) {
    if (label[s] != n) continue;
    label[s] = next;
    queue.assign(1, s);
    while (!queue.empty()) {
      const NodeId v = queue.back();
      queue.pop_back();
      for (NodeId w : g.neighbors(v)) {
        if (label[w] == n) {
          label[w] = next;
          queue.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

inline bool is_connected(const Graph& g) {
  if (g.node_count() == 0) return true;
  const auto labels = component_labels(g);
  return std::all_of(labels.begin(), labels.end(), [](NodeId l) { return l == 0; });
}

/// A node-induced subgraph plus the id mappings between it and its parent.
struct InducedSubgraph {
  Graph graph;
  std::vector<NodeId> to_original;           // subgraph id -> original id
  std::vector<std::int64_t> from_original;   // original id -> subgraph id, -1 if dropped
};

inline InducedSubgraph induced_subgraph(const Graph& g, std::span<const char> keep) {
  const NodeId n = g.node_count();
  InducedSubgraph out;
  out.from_original.assign(n, -1);
  for (NodeId i = 0; i < n; ++i) {
    if (keep[i]) {
      out.from_original[i] = static_cast<std::int64_t>(out.to_original.size());
      out.to_original.push_back(i);
    }
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (const auto& [a, b] : g.edges())
    if (keep[a] && keep[b])
      edges.emplace_back(static_cast<NodeId>(out.from_original[a]),
                         static_cast<NodeId>(out.from_original[b]));
  out.graph = Graph::from_edge_list(static_cast<NodeId>(out.to_original.size()), std::move(edges));
  return out;
}

/// Largest connected component (ties broken toward the component holding the
/// smallest node id). Node order is preserved.
inline InducedSubgraph largest_component(const Graph& g) {
  const auto labels = component_labels(g);
  const NodeId comps = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<std::size_t> size(comps, 0);
  for (NodeId l : labels) ++size[l];
  NodeId best = 0;
  for (NodeId c = 1; c < comps; ++c)
    if (size[c] > size[best]) best = c;
  std::vector<char> keep(g.node_count());
  for (NodeId i = 0; i < g.node_count(); ++i) keep[i] = labels[i] == best ? 1 : 0;
  return induced_subgraph(g, keep);
}

}  // namespace spreadnet
