#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "spreadnet/analysis.hpp"
#include "spreadnet/cascade.hpp"
#include "spreadnet/centrality.hpp"
#include "spreadnet/common.hpp"
#include "spreadnet/csv.hpp"
#include "spreadnet/features.hpp"
#include "spreadnet/graph.hpp"
#include "spreadnet/rng.hpp"
#include "spreadnet/tim.hpp"

namespace spreadnet {

inline constexpr const char* kSoftwareVersion = "spreadnet 1.0.0";

namespace detail {
constexpr std::uint64_t kFeatureStageTag = 0x6578702d66656174ull;
constexpr std::uint64_t kCapacityStageTag = 0x6578702d63617073ull;
constexpr std::uint64_t kTimStageTag = 0x6578702d74696d20ull;
constexpr std::uint64_t kSeedPickStageTag = 0x6578702d7069636bull;
constexpr std::uint64_t kRemovalStageTag = 0x6578702d72656d6full;
constexpr std::uint64_t kCascadeStageTag = 0x6578702d63617363ull;
constexpr std::uint64_t kShuffleStageTag = 0x6578702d73687566ull;
}  // namespace detail

// ---------------------------------------------------------------------------
// Dataset resolution

/// Small-world generator parameters, written "ws:n,k,p" or "ws:n,k,p,seed".
struct GeneratorSpec {
  NodeId n = 0;
  NodeId k = 0;
  double rewire_p = 0.0;
  std::uint64_t seed = 42;

  static GeneratorSpec parse(const std::string& text) {
    if (text.rfind("ws:", 0) != 0)
      throw ParameterError("unknown generator spec (expected ws:n,k,p[,seed]): " + text);
    GeneratorSpec spec;
    std::vector<std::string> parts;
    std::size_t start = 3;
    while (start <= text.size()) {
      const std::size_t comma = text.find(',', start);
      parts.push_back(text.substr(start, comma == std::string::npos ? comma : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (parts.size() != 3 && parts.size() != 4)
      throw ParameterError("generator spec needs 3 or 4 fields: " + text);
    try {
      spec.n = static_cast<NodeId>(std::stoul(parts[0]));
      spec.k = static_cast<NodeId>(std::stoul(parts[1]));
      spec.rewire_p = std::stod(parts[2]);
      if (parts.size() == 4) spec.seed = std::stoull(parts[3]);
    } catch (const std::logic_error&) {
      throw ParameterError("malformed generator spec: " + text);
    }
    return spec;
  }

  std::string to_string() const {
    std::string s = "ws:" + std::to_string(n) + "," + std::to_string(k) + "," +
                    format_general(rewire_p);
    if (seed != 42) s += "," + std::to_string(seed);
    return s;
  }
};

/// Where the experiment graph comes from: an edge-list file or the generator.
struct DatasetSpec {
  std::string path;  // non-empty wins over the generator
  GeneratorSpec generator;
  bool use_generator = false;

  static DatasetSpec from_path(std::string p) {
    DatasetSpec d;
    d.path = std::move(p);
    return d;
  }
  static DatasetSpec from_generator(const GeneratorSpec& spec) {
    DatasetSpec d;
    d.generator = spec;
    d.use_generator = true;
    return d;
  }

  /// Short name used in CSV rows; commas and whitespace are replaced so the
  /// label stays a single CSV field.
  std::string label() const {
    std::string base;
    if (!use_generator) {
      std::size_t slash = path.find_last_of("/\\");
      base = slash == std::string::npos ? path : path.substr(slash + 1);
      const std::size_t dot = base.find_last_of('.');
      if (dot != std::string::npos && dot > 0) base = base.substr(0, dot);
    } else {
      base = generator.to_string();
    }
    for (char& c : base)
      if (c == ',' || c == ' ' || c == '\t' || c == '"') c = '-';
    return base;
  }
};

inline Graph load_dataset(const DatasetSpec& spec) {
  if (!spec.use_generator) {
    if (spec.path.empty()) throw ParameterError("no dataset given (need a path or generator)");
    return load_edge_list_file(spec.path);
  }
  const auto& gen = spec.generator;
  return generate_small_world(gen.n, gen.k, gen.rewire_p, gen.seed);
}

// ---------------------------------------------------------------------------
// Seed policies and experiment configuration

struct SeedPolicy {
  enum class Kind {
    kRandomFraction,
    kTopDegreeFraction,
    kTimFraction,
    kRandomCount,
    kTimCount,
  };

  Kind kind = Kind::kTopDegreeFraction;
  double fraction = 0.01;
  std::size_t count = 0;

  static SeedPolicy random_fraction(double f) { return checked({Kind::kRandomFraction, f, 0}); }
  static SeedPolicy top_degree_fraction(double f) {
    return checked({Kind::kTopDegreeFraction, f, 0});
  }
  static SeedPolicy tim_fraction(double f) { return checked({Kind::kTimFraction, f, 0}); }
  static SeedPolicy random_count(std::size_t c) { return checked({Kind::kRandomCount, 0.0, c}); }
  static SeedPolicy tim_count(std::size_t c) { return checked({Kind::kTimCount, 0.0, c}); }

  bool is_fraction() const {
    return kind == Kind::kRandomFraction || kind == Kind::kTopDegreeFraction ||
           kind == Kind::kTimFraction;
  }
  bool uses_tim() const { return kind == Kind::kTimFraction || kind == Kind::kTimCount; }

  std::size_t resolve_k(NodeId n) const {
    if (n == 0) throw ParameterError("graph has no nodes");
    std::size_t k;
    if (is_fraction()) {
      k = std::max<std::size_t>(
          1, static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n))));
    } else {
      k = count;
    }
    if (k > n) throw ParameterError("seed count " + std::to_string(k) + " exceeds n");
    return k;
  }

  /// "random:0.01", "top-degree:0.01", "tim:0.01", "random-count:5", "tim-count:5"
  static SeedPolicy parse(const std::string& text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos) throw ParameterError("seed policy needs name:value: " + text);
    const std::string name = text.substr(0, colon);
    const std::string value = text.substr(colon + 1);
    try {
      if (name == "random") return random_fraction(std::stod(value));
      if (name == "top-degree") return top_degree_fraction(std::stod(value));
      if (name == "tim") return tim_fraction(std::stod(value));
      if (name == "random-count") return random_count(std::stoul(value));
      if (name == "tim-count") return tim_count(std::stoul(value));
    } catch (const std::logic_error&) {
      throw ParameterError("malformed seed policy value: " + text);
    }
    throw ParameterError("unknown seed policy: " + name);
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::kRandomFraction: return "random:" + format_general(fraction);
      case Kind::kTopDegreeFraction: return "top-degree:" + format_general(fraction);
      case Kind::kTimFraction: return "tim:" + format_general(fraction);
      case Kind::kRandomCount: return "random-count:" + std::to_string(count);
      case Kind::kTimCount: return "tim-count:" + std::to_string(count);
    }
    return "?";
  }

 private:
  static SeedPolicy checked(SeedPolicy p) {
    if (p.is_fraction()) {
      if (!(p.fraction > 0.0 && p.fraction <= 1.0))
        throw ParameterError("seed fraction must be in (0, 1]");
    } else if (p.count == 0) {
      throw ParameterError("seed count must be >= 1");
    }
    return p;
  }
};

enum class RemovalStrategy { kByInfluence, kBySusceptibility, kRandom };

inline const char* removal_strategy_name(RemovalStrategy s) {
  switch (s) {
    case RemovalStrategy::kByInfluence: return "by_influence";
    case RemovalStrategy::kBySusceptibility: return "by_susceptibility";
    case RemovalStrategy::kRandom: return "random";
  }
  return "?";
}

struct ExperimentConfig {
  DatasetSpec dataset;
  std::vector<InfectionModel> models;  // meaning varies per experiment; see each one
  std::size_t runs_per_seed = 100;
  std::size_t rounds = 10;
  SeedPolicy seed_policy = SeedPolicy::top_degree_fraction(0.01);
  std::vector<RemovalStrategy> strategies = {RemovalStrategy::kByInfluence,
                                             RemovalStrategy::kBySusceptibility,
                                             RemovalStrategy::kRandom};
  std::vector<double> removal_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  std::size_t realizations = 100;
  std::uint64_t rng_seed = 1;
  SampleBudget tim_budget;  // theta == 0 means "default_for(n)"
  double top_fraction = 0.1;

  SampleBudget resolved_tim_budget(NodeId n) const {
    if (tim_budget.mode == SampleBudget::Mode::kFixed && tim_budget.theta == 0)
      return SampleBudget::default_for(n);
    return tim_budget;
  }
};

// ---------------------------------------------------------------------------
// Capacity vs. centrality associations (exp-table2)

struct AssociationRow {
  std::string model;
  std::string metric;
  bool defined = false;  // false: degenerate input, report fields are NaN
  AssociationReport report;
};

struct AssociationAverage {
  std::string model;
  double pearson_r = 0.0;
  double spearman_rho = 0.0;
  double kendall_tau = 0.0;
  double top_precision = 0.0;
  std::size_t metrics_used = 0;
};

struct AssociationTable {
  std::vector<AssociationRow> rows;
  std::vector<AssociationAverage> averages;
};

/// One feature draw per dataset; per model: arc probabilities, per-node
/// capacity (runs_per_seed cascades each), all 12 centrality vectors, and the
/// association of capacity with every metric. Metric scores are correlated
/// raw — eccentricity keeps its natural (inverted) sign, which is noted in
/// the manifest. Degenerate metrics yield an undefined row and are skipped by
/// the across-metric average; if every row of a model is degenerate the
/// experiment fails loudly.
inline AssociationTable exp_metric_association(const ExperimentConfig& cfg, const Graph& g) {
  if (cfg.models.empty()) throw ParameterError("no infection models configured");
  const auto features = assign_features(g, key_hash(cfg.rng_seed, detail::kFeatureStageTag, 0));
  AssociationTable table;
  for (const auto& model : cfg.models) {
    const auto p = edge_probabilities(g, features, model);
    const auto caps =
        per_node_capacity(g, p, cfg.runs_per_seed, key_hash(cfg.rng_seed, detail::kCapacityStageTag));
    std::vector<double> capacity(g.node_count());
    for (NodeId i = 0; i < g.node_count(); ++i) capacity[i] = caps[i].mean_fraction;

    const auto metrics = compute_all_metrics(g, p);
    AssociationAverage avg;
    avg.model = model.name();
    for (Metric m : kAllMetrics) {
      AssociationRow row;
      row.model = model.name();
      row.metric = metric_name(m);
      try {
        row.report = associate(capacity, metrics.of(m), cfg.top_fraction);
        row.defined = true;
        avg.pearson_r += row.report.pearson_r;
        avg.spearman_rho += row.report.spearman_rho;
        avg.kendall_tau += row.report.kendall_tau;
        avg.top_precision += row.report.top_precision;
        ++avg.metrics_used;
      } catch (const DegenerateInput&) {
        row.defined = false;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.report = {nan, nan, nan, nan, 0};
      }
      table.rows.push_back(std::move(row));
    }
    if (avg.metrics_used == 0)
      throw DegenerateInput("every metric row is degenerate for model " + model.name());
    const double used = static_cast<double>(avg.metrics_used);
    avg.pearson_r /= used;
    avg.spearman_rho /= used;
    avg.kendall_tau /= used;
    avg.top_precision /= used;
    table.averages.push_back(std::move(avg));
  }
  return table;
}

/// report CSV: dataset,model,metric,pearson,spearman,kendall,top10_precision,n_pairs
/// Average rows use metric="average" and carry metrics_used in n_pairs.
inline void write_association_csv(std::ostream& out, const std::string& dataset,
                                  const AssociationTable& table) {
  out << "dataset,model,metric,pearson,spearman,kendall,top10_precision,n_pairs\n";
  for (const auto& row : table.rows) {
    out << dataset << ',' << row.model << ',' << row.metric << ','
        << format_fixed(row.report.pearson_r, 6) << ',' << format_fixed(row.report.spearman_rho, 6)
        << ',' << format_fixed(row.report.kendall_tau, 6) << ','
        << format_fixed(row.report.top_precision, 6) << ',' << row.report.n_pairs << '\n';
  }
  for (const auto& avg : table.averages) {
    out << dataset << ',' << avg.model << ",average," << format_fixed(avg.pearson_r, 6) << ','
        << format_fixed(avg.spearman_rho, 6) << ',' << format_fixed(avg.kendall_tau, 6) << ','
        << format_fixed(avg.top_precision, 6) << ',' << avg.metrics_used << '\n';
  }
}

// ---------------------------------------------------------------------------
// Dispersion of TIM seed degrees under the two infection-rate inputs

struct SeedDegreeRow {
  std::size_t round = 0;
  std::string model;
  NodeId node = 0;
  std::size_t degree = 0;
};

struct SeedDegreeSummary {
  std::size_t round = 0;
  std::string model;
  double variance = 0.0;  // sample variance of the seed degrees
  double iqr = 0.0;       // Q3 - Q1, linear-interpolation quantiles
};

struct SeedDegreeResult {
  std::vector<SeedDegreeRow> rows;
  std::vector<SeedDegreeSummary> summaries;
  std::size_t seeds_per_round = 0;
};

namespace detail {
/// Linear-interpolation quantile (the numpy default) on a sorted copy.
inline double quantile(std::vector<double> v, double q) {
  if (v.empty()) throw ParameterError("quantile of empty vector");
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] + frac * (v[hi] - v[lo]);
}

inline double sample_variance(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(v.size() - 1);
}
}  // namespace detail

/// Per round: fresh features, then TIM seed selection under Constant(0.1) and
/// under I*S, recording every seed's degree plus per-(round, model) dispersion.
inline SeedDegreeResult exp_tim_seed_degree(const ExperimentConfig& cfg, const Graph& g) {
  const std::array<InfectionModel, 2> models = {InfectionModel::constant_rate(0.1),
                                                InfectionModel::influence_times_susceptibility()};
  const std::size_t k = cfg.seed_policy.resolve_k(g.node_count());
  const auto budget = cfg.resolved_tim_budget(g.node_count());
  SeedDegreeResult result;
  result.seeds_per_round = k;
  for (std::size_t round = 0; round < cfg.rounds; ++round) {
    const auto features =
        assign_features(g, key_hash(cfg.rng_seed, detail::kFeatureStageTag, round));
    for (std::size_t mi = 0; mi < models.size(); ++mi) {
      const auto p = edge_probabilities(g, features, models[mi]);
      const auto sel =
          select_seeds(g, p, k, budget, key_hash(cfg.rng_seed, detail::kTimStageTag, round, mi));
      std::vector<double> degrees;
      degrees.reserve(sel.seeds.size());
      for (NodeId s : sel.seeds) {
        result.rows.push_back({round, models[mi].name(), s, g.degree(s)});
        degrees.push_back(static_cast<double>(g.degree(s)));
      }
      result.summaries.push_back({round, models[mi].name(), detail::sample_variance(degrees),
                                  detail::quantile(degrees, 0.75) - detail::quantile(degrees, 0.25)});
    }
  }
  return result;
}

inline void write_seed_degree_csv(std::ostream& out, const SeedDegreeResult& r) {
  out << "round,model,node_id,degree\n";
  for (const auto& row : r.rows)
    out << row.round << ',' << row.model << ',' << row.node << ',' << row.degree << '\n';
}

inline void write_seed_degree_summary_csv(std::ostream& out, const SeedDegreeResult& r) {
  out << "round,model,variance,iqr\n";
  for (const auto& s : r.summaries)
    out << s.round << ',' << s.model << ',' << format_fixed(s.variance, 6) << ','
        << format_fixed(s.iqr, 6) << '\n';
}

// ---------------------------------------------------------------------------
// Capacity vs. the node's own and neighbor-sum features

struct FeatureCorrelationRow {
  std::string feature;  // influence | susceptibility | influence_sum | susceptibility_sum
  AssociationReport report;
};

/// One feature draw, I*S probabilities, per-node capacity (cfg.runs_per_seed
/// cascades per node), then the association of capacity with I_i, S_i and the
/// neighbor sums.
inline std::vector<FeatureCorrelationRow> exp_seed_feature_correlation(const ExperimentConfig& cfg,
                                                                       const Graph& g) {
  const auto features = assign_features(g, key_hash(cfg.rng_seed, detail::kFeatureStageTag, 0));
  const auto model = cfg.models.empty() ? InfectionModel::influence_times_susceptibility()
                                        : cfg.models.front();
  const auto p = edge_probabilities(g, features, model);
  const auto caps =
      per_node_capacity(g, p, cfg.runs_per_seed, key_hash(cfg.rng_seed, detail::kCapacityStageTag));
  std::vector<double> capacity(g.node_count());
  for (NodeId i = 0; i < g.node_count(); ++i) capacity[i] = caps[i].mean_fraction;
  const auto sums = neighbor_feature_sums(g, features);

  std::vector<FeatureCorrelationRow> rows;
  const auto push = [&](const char* name, const std::vector<double>& v) {
    rows.push_back({name, associate(capacity, v, cfg.top_fraction)});
  };
  push("influence", features.influence);
  push("susceptibility", features.susceptibility);
  push("influence_sum", sums.influence_sum);
  push("susceptibility_sum", sums.susceptibility_sum);
  return rows;
}

inline void write_feature_correlation_csv(std::ostream& out, const std::string& dataset,
                                          const std::vector<FeatureCorrelationRow>& rows) {
  out << "dataset,feature,pearson,spearman,kendall,top10_precision,n_pairs\n";
  for (const auto& row : rows) {
    out << dataset << ',' << row.feature << ',' << format_fixed(row.report.pearson_r, 6) << ','
        << format_fixed(row.report.spearman_rho, 6) << ',' << format_fixed(row.report.kendall_tau, 6)
        << ',' << format_fixed(row.report.top_precision, 6) << ',' << row.report.n_pairs << '\n';
  }
}

// ---------------------------------------------------------------------------
// Spreading under progressive node removal

struct RemovalCurvePoint {
  std::string strategy;
  double phi = 0.0;
  double mean_spread = 0.0;  // fraction of the original n
  double std_dev = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
  std::size_t realizations = 0;
};

namespace detail {
inline std::vector<NodeId> pick_random_distinct(NodeId n, std::size_t k, StreamRng& rng) {
  std::vector<NodeId> pool(n);
  std::iota(pool.begin(), pool.end(), NodeId{0});
  for (std::size_t i = 0; i < k; ++i) {  // partial Fisher-Yates
    const std::size_t j = i + static_cast<std::size_t>(rng.next_below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

inline std::vector<NodeId> top_degree_nodes(const Graph& g, std::size_t k) {
  std::vector<NodeId> order(g.node_count());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
    return a < b;
  });
  order.resize(k);
  return order;
}
}  // namespace detail

/// Seed choice for one realization. `realization_key` feeds the random picks
/// and TIM sampling; top-degree is deterministic.
inline std::vector<NodeId> choose_seeds(const Graph& g, const EdgeProbabilities& p,
                                        const SeedPolicy& policy, const SampleBudget& tim_budget,
                                        std::uint64_t realization_key) {
  const std::size_t k = policy.resolve_k(g.node_count());
  switch (policy.kind) {
    case SeedPolicy::Kind::kRandomFraction:
    case SeedPolicy::Kind::kRandomCount: {
      StreamRng rng(key_hash(realization_key, detail::kSeedPickStageTag));
      auto seeds = detail::pick_random_distinct(g.node_count(), k, rng);
      std::sort(seeds.begin(), seeds.end());
      return seeds;
    }
    case SeedPolicy::Kind::kTopDegreeFraction:
      return detail::top_degree_nodes(g, k);
    case SeedPolicy::Kind::kTimFraction:
    case SeedPolicy::Kind::kTimCount: {
      auto sel = select_seeds(g, p, k, tim_budget, key_hash(realization_key, detail::kTimStageTag));
      std::sort(sel.seeds.begin(), sel.seeds.end());
      return sel.seeds;
    }
  }
  throw ParameterError("unhandled seed policy");
}

/// Removal experiment. Per realization: fresh features, arc probabilities
/// (I*S unless overridden), seeds by policy (chosen on the intact graph),
/// then for every strategy and removal fraction phi, drop the floor(phi*n)
/// highest-ranked non-seed nodes (by I, by S, or a random order; ties by
/// ascending id) and run one cascade from the same per-realization arc-draw
/// stream. Spread is counted against the original n.
///
/// Sharing one arc-draw stream across strategies and fractions makes the
/// comparison paired: at phi=0 all strategies coincide, and each realization's
/// curve is non-increasing in phi for the by-I / by-S strategies (their
/// removal sets are nested).
inline std::vector<RemovalCurvePoint> exp_removal(const ExperimentConfig& cfg, const Graph& g) {
  const NodeId n = g.node_count();
  if (cfg.realizations == 0) throw ParameterError("realizations must be >= 1");
  if (cfg.strategies.empty()) throw ParameterError("no removal strategies configured");
  if (cfg.removal_grid.empty() || cfg.removal_grid.front() != 0.0)
    throw ParameterError("removal grid must start at 0");
  if (!std::is_sorted(cfg.removal_grid.begin(), cfg.removal_grid.end()))
    throw ParameterError("removal grid must be ascending");
  for (double phi : cfg.removal_grid)
    if (!(phi >= 0.0 && phi <= 0.5))
      throw ParameterError("removal fractions must lie in [0, 0.5]");

  const auto model = cfg.models.empty() ? InfectionModel::influence_times_susceptibility()
                                        : cfg.models.front();
  const auto budget = cfg.resolved_tim_budget(n);

  // spread[strategy][phi] -> per-realization samples
  std::vector<std::vector<std::vector<double>>> spread(
      cfg.strategies.size(), std::vector<std::vector<double>>(cfg.removal_grid.size()));

  std::vector<char> is_seed(n), removed(n);
  for (std::size_t r = 0; r < cfg.realizations; ++r) {
    const auto features = assign_features(g, key_hash(cfg.rng_seed, detail::kFeatureStageTag, r));
    const auto p = edge_probabilities(g, features, model);
    const std::uint64_t realization_key = key_hash(cfg.rng_seed, detail::kRemovalStageTag, r);
    const auto seeds = choose_seeds(g, p, cfg.seed_policy, budget, realization_key);
    const std::uint64_t cascade_key = key_hash(cfg.rng_seed, detail::kCascadeStageTag, r);

    std::fill(is_seed.begin(), is_seed.end(), 0);
    for (NodeId s : seeds) is_seed[s] = 1;
    std::vector<NodeId> pool;
    pool.reserve(n - seeds.size());
    for (NodeId i = 0; i < n; ++i)
      if (!is_seed[i]) pool.push_back(i);

    const std::size_t max_removal =
        static_cast<std::size_t>(std::floor(cfg.removal_grid.back() * static_cast<double>(n)));
    if (max_removal > pool.size())
      throw ParameterError("removal of " + std::to_string(max_removal) +
                           " nodes exceeds the " + std::to_string(pool.size()) +
                           " non-seed nodes available; feasible maximum fraction is " +
                           format_fixed(static_cast<double>(pool.size()) / static_cast<double>(n), 4));

    for (std::size_t si = 0; si < cfg.strategies.size(); ++si) {
      auto order = pool;
      switch (cfg.strategies[si]) {
        case RemovalStrategy::kByInfluence:
          std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
            if (features.influence[a] != features.influence[b])
              return features.influence[a] > features.influence[b];
            return a < b;
          });
          break;
        case RemovalStrategy::kBySusceptibility:
          std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
            if (features.susceptibility[a] != features.susceptibility[b])
              return features.susceptibility[a] > features.susceptibility[b];
            return a < b;
          });
          break;
        case RemovalStrategy::kRandom: {
          StreamRng rng(key_hash(realization_key, detail::kShuffleStageTag,
                                 static_cast<std::uint64_t>(cfg.strategies[si])));
          for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[rng.next_below(i)]);
          break;
        }
      }
      for (std::size_t pi = 0; pi < cfg.removal_grid.size(); ++pi) {
        const std::size_t m = static_cast<std::size_t>(
            std::floor(cfg.removal_grid[pi] * static_cast<double>(n)));
        std::fill(removed.begin(), removed.end(), 0);
        for (std::size_t i = 0; i < m; ++i) removed[order[i]] = 1;
        const auto outcome = simulate_cascade(g, p, seeds, cascade_key, removed);
        spread[si][pi].push_back(static_cast<double>(outcome.infected.size()) /
                                 static_cast<double>(n));
      }
    }
  }

  std::vector<RemovalCurvePoint> out;
  for (std::size_t si = 0; si < cfg.strategies.size(); ++si) {
    for (std::size_t pi = 0; pi < cfg.removal_grid.size(); ++pi) {
      const auto est = detail::summarize_fractions(spread[si][pi]);
      RemovalCurvePoint pt;
      pt.strategy = removal_strategy_name(cfg.strategies[si]);
      pt.phi = cfg.removal_grid[pi];
      pt.mean_spread = est.mean_fraction;
      pt.std_dev = est.std_fraction;
      pt.ci95_low = est.ci95_low;
      pt.ci95_high = est.ci95_high;
      pt.realizations = est.runs;
      out.push_back(std::move(pt));
    }
  }
  return out;
}

inline void write_removal_csv(std::ostream& out, const std::string& dataset,
                              const std::vector<RemovalCurvePoint>& points) {
  out << "dataset,strategy,phi,mean_spread,std_dev,ci95_low,ci95_high,realizations\n";
  for (const auto& pt : points) {
    out << dataset << ',' << pt.strategy << ',' << format_fixed(pt.phi, 2) << ','
        << format_fixed(pt.mean_spread, 6) << ',' << format_fixed(pt.std_dev, 6) << ','
        << format_fixed(pt.ci95_low, 6) << ',' << format_fixed(pt.ci95_high, 6) << ','
        << pt.realizations << '\n';
  }
}

// ---------------------------------------------------------------------------
// Shared table writers

inline void write_features_csv(std::ostream& out, const FeatureTable& f) {
  out << "node_id,influence,susceptibility\n";
  for (std::size_t i = 0; i < f.size(); ++i)
    out << i << ',' << format_fixed(f.influence[i], 6) << ','
        << format_fixed(f.susceptibility[i], 6) << '\n';
}

inline void write_probabilities_csv(std::ostream& out, const Graph& g,
                                    const EdgeProbabilities& p) {
  out << "src,dst,p\n";
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const auto row = g.neighbors(i);
    const std::size_t base = g.arc_offset(i);
    for (std::size_t s = 0; s < row.size(); ++s)
      out << i << ',' << row[s] << ',' << format_fixed(p.at(base + s), 6) << '\n';
  }
}

inline void write_capacity_csv(std::ostream& out, const std::vector<SpreadEstimate>& caps) {
  out << "node_id,capacity_mean,capacity_std,runs\n";
  for (std::size_t i = 0; i < caps.size(); ++i)
    out << i << ',' << format_fixed(caps[i].mean_fraction, 6) << ','
        << format_fixed(caps[i].std_fraction, 6) << ',' << caps[i].runs << '\n';
}

inline void write_scores_csv(std::ostream& out, const std::vector<CentralityScores>& scores) {
  out << "node_id,metric,score\n";
  for (const auto& sc : scores)
    for (std::size_t i = 0; i < sc.values.size(); ++i)
      out << i << ',' << sc.metric << ',' << format_fixed(sc.values[i], 9) << '\n';
}

inline void write_seeds_csv(std::ostream& out, const Graph& g, const SeedSelection& sel) {
  out << "rank,node_id,degree,estimated_spread_after_rank\n";
  for (std::size_t r = 0; r < sel.seeds.size(); ++r)
    out << (r + 1) << ',' << sel.seeds[r] << ',' << g.degree(sel.seeds[r]) << ','
        << format_fixed(sel.spread_after_rank[r], 6) << '\n';
}

}  // namespace spreadnet
