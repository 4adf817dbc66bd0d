#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spreadnet/common.hpp"
#include "spreadnet/graph.hpp"
#include "spreadnet/rng.hpp"

namespace spreadnet {

/// Per-node influence and susceptibility, both i.i.d. uniform on [0, 1).
struct FeatureTable {
  std::vector<double> influence;
  std::vector<double> susceptibility;

  std::size_t size() const { return influence.size(); }
};

namespace detail {
constexpr std::uint64_t kFeatureTag = 0x666561747572652dull;
}

/// Features are drawn from a stream keyed by (rng_seed, node id), so node i's
/// values do not depend on how many nodes the graph has or on draw order.
inline FeatureTable assign_features(const Graph& g, std::uint64_t rng_seed) {
  const NodeId n = g.node_count();
  FeatureTable f;
  f.influence.resize(n);
  f.susceptibility.resize(n);
  for (NodeId i = 0; i < n; ++i) {
    StreamRng rng(key_hash(rng_seed, detail::kFeatureTag, i));
    f.influence[i] = rng.next_unit();
    f.susceptibility[i] = rng.next_unit();
  }
  return f;
}

/// How the transmission probability of arc i->j is derived from features.
struct InfectionModel {
  enum class Kind {
    kConstant,                       // p = c
    kAvgNeighborSusceptibility,      // p = mean susceptibility of i's neighbors
    kInfluenceOnly,                  // p = I_i
    kInfluenceTimesSusceptibility,   // p = I_i * S_j
  };

  Kind kind = Kind::kConstant;
  double constant = 0.1;

  static InfectionModel constant_rate(double c) {
    if (!(c >= 0.0 && c <= 1.0)) throw ParameterError("constant rate must be in [0, 1]");
    return {Kind::kConstant, c};
  }
  static InfectionModel avg_neighbor_susceptibility() {
    return {Kind::kAvgNeighborSusceptibility, 0.0};
  }
  static InfectionModel influence_only() { return {Kind::kInfluenceOnly, 0.0}; }
  static InfectionModel influence_times_susceptibility() {
    return {Kind::kInfluenceTimesSusceptibility, 0.0};
  }

  std::string name() const {
    switch (kind) {
      case Kind::kConstant: return "constant";
      case Kind::kAvgNeighborSusceptibility: return "avg_s";
      case Kind::kInfluenceOnly: return "i";
      case Kind::kInfluenceTimesSusceptibility: return "i_s";
    }
    return "?";
  }

  /// Parses "constant" (default rate 0.1), "constant:<c>", "avg_s", "i",
  /// "i_s". Throws ParameterError on anything else.
  static InfectionModel from_name(const std::string& name) {
    if (name == "constant") return constant_rate(0.1);
    if (name.rfind("constant:", 0) == 0) {
      try {
        return constant_rate(std::stod(name.substr(9)));
      } catch (const std::logic_error&) {
        throw ParameterError("bad constant rate in model name: " + name);
      }
    }
    if (name == "avg_s") return avg_neighbor_susceptibility();
    if (name == "i") return influence_only();
    if (name == "i_s") return influence_times_susceptibility();
    throw ParameterError("unknown infection model: " + name);
  }
};

/// Transmission probability per directed arc slot (see Graph for slot layout).
struct EdgeProbabilities {
  std::vector<double> by_arc;

  double at(std::size_t arc) const { return by_arc[arc]; }
  std::size_t size() const { return by_arc.size(); }
};

inline EdgeProbabilities edge_probabilities(const Graph& g, const FeatureTable& f,
                                            const InfectionModel& m) {
  const NodeId n = g.node_count();
  if (f.size() != n || f.susceptibility.size() != n)
    throw ParameterError("feature table does not match graph size");
  EdgeProbabilities p;
  p.by_arc.resize(g.arc_count());

  std::vector<double> per_source;  // for the models that are constant per source
  switch (m.kind) {
    case InfectionModel::Kind::kConstant:
      per_source.assign(n, m.constant);
      break;
    case InfectionModel::Kind::kAvgNeighborSusceptibility:
      per_source.resize(n);
      for (NodeId i = 0; i < n; ++i) {
        const auto row = g.neighbors(i);
        double sum = 0;
        for (NodeId j : row) sum += f.susceptibility[j];
        per_source[i] = row.empty() ? 0.0 : sum / static_cast<double>(row.size());
      }
      break;
    case InfectionModel::Kind::kInfluenceOnly:
      per_source = f.influence;
      break;
    case InfectionModel::Kind::kInfluenceTimesSusceptibility:
      per_source.clear();
      break;
  }

  for (NodeId i = 0; i < n; ++i) {
    const auto row = g.neighbors(i);
    const std::size_t base = g.arc_offset(i);
    for (std::size_t s = 0; s < row.size(); ++s) {
      p.by_arc[base + s] = per_source.empty() ? f.influence[i] * f.susceptibility[row[s]]
                                              : per_source[i];
    }
  }
  return p;
}

/// Sum of neighbor influence / susceptibility per node (the local-environment
/// covariates examined alongside a node's own features).
struct NeighborFeatureSums {
  std::vector<double> influence_sum;
  std::vector<double> susceptibility_sum;
};

inline NeighborFeatureSums neighbor_feature_sums(const Graph& g, const FeatureTable& f) {
  const NodeId n = g.node_count();
  if (f.size() != n) throw ParameterError("feature table does not match graph size");
  NeighborFeatureSums s;
  s.influence_sum.assign(n, 0.0);
  s.susceptibility_sum.assign(n, 0.0);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j : g.neighbors(i)) {
      s.influence_sum[i] += f.influence[j];
      s.susceptibility_sum[i] += f.susceptibility[j];
    }
  }
  return s;
}

/// Restricts a per-arc table to an induced subgraph (used when distance-based
/// metrics fall back to the largest component).
inline EdgeProbabilities project_probabilities(const Graph& g, const EdgeProbabilities& p,
                                               const Graph& sub,
                                               std::span<const NodeId> to_original) {
  EdgeProbabilities out;
  out.by_arc.resize(sub.arc_count());
  for (NodeId i = 0; i < sub.node_count(); ++i) {
    const auto row = sub.neighbors(i);
    const std::size_t base = sub.arc_offset(i);
    for (std::size_t s = 0; s < row.size(); ++s)
      out.by_arc[base + s] = p.at(g.arc_index(to_original[i], to_original[row[s]]));
  }
  return out;
}

}  // namespace spreadnet
