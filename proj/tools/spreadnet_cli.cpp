// Command-line harness around the spreadnet library: dataset statistics,
// centrality/capacity/seed exports, and the four experiment pipelines.
// Every command writes CSV outputs plus a key=value manifest into --out-dir;
// the manifest doubles as a --config file that reproduces the run.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spreadnet/spreadnet.hpp"

namespace sn = spreadnet;
namespace fs = std::filesystem;

namespace {

struct CommonArgs {
  std::string graph_path;
  std::string generator_spec;
  std::string model_name = "i_s";
  std::uint64_t rng_seed = 1;
  std::string out_dir = "out";
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--graph", args.graph_path, "Edge-list file (whitespace separated node pairs)");
  cmd->add_option("--generator", args.generator_spec,
                  "Synthetic graph spec, ws:n,k,p[,seed] (used when --graph is absent)");
  cmd->add_option("--model", args.model_name,
                  "Infection model: constant | constant:<c> | avg_s | i | i_s");
  cmd->add_option("--rng-seed", args.rng_seed, "Master RNG seed");
  cmd->add_option("--out-dir", args.out_dir, "Output directory");
}

sn::DatasetSpec dataset_from(const CommonArgs& args) {
  if (!args.graph_path.empty()) return sn::DatasetSpec::from_path(args.graph_path);
  if (!args.generator_spec.empty())
    return sn::DatasetSpec::from_generator(sn::GeneratorSpec::parse(args.generator_spec));
  throw sn::ParameterError("need --graph or --generator");
}

std::string hex_key(std::uint64_t key) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(key));
  return buf;
}

// Manifest layout: option echoes are written as "<command>.<option>" so the
// file can be fed straight back via --config (the prefix routes each value to
// the right subcommand); bare keys are run metadata and are ignored on reread.
struct RunContext {
  std::string command;
  sn::DatasetSpec dataset;
  sn::Graph graph;
  sn::Manifest manifest;
  std::string out_dir;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

  template <typename T>
  void opt(const std::string& key, const T& value) {
    manifest.set(command + "." + key, value);
  }

  void note_common(const CommonArgs& args) {
    manifest.set("command", command);
    manifest.set("version", std::string(sn::kSoftwareVersion));
    if (!args.graph_path.empty()) opt("graph", args.graph_path);
    if (args.graph_path.empty() && !args.generator_spec.empty())
      opt("generator", dataset.generator.to_string());
    opt("model", args.model_name);
    opt("rng-seed", args.rng_seed);
    manifest.set("dataset_label", dataset.label());
    manifest.set("nodes", std::size_t{graph.node_count()});
    manifest.set("edges", graph.edge_count());
  }

  std::ofstream file(const std::string& name) const {
    return sn::open_output((fs::path(out_dir) / name).string());
  }

  void finish() {
    const auto elapsed = std::chrono::steady_clock::now() - started;
    manifest.set("wall_time_ms",
                 std::size_t(std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count()));
    manifest.write_file((fs::path(out_dir) / "manifest.txt").string());
  }
};

RunContext make_context(const std::string& command, const CommonArgs& args) {
  RunContext ctx;
  ctx.command = command;
  ctx.dataset = dataset_from(args);
  ctx.graph = sn::load_dataset(ctx.dataset);
  ctx.out_dir = args.out_dir;
  fs::create_directories(ctx.out_dir);
  ctx.note_common(args);
  return ctx;
}

std::vector<sn::InfectionModel> parse_model_list(const std::string& csv) {
  std::vector<sn::InfectionModel> models;
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ','))
    if (!token.empty()) models.push_back(sn::InfectionModel::from_name(token));
  if (models.empty()) throw sn::ParameterError("no models in list: " + csv);
  return models;
}

std::vector<double> parse_grid(const std::string& csv) {
  std::vector<double> grid;
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ','))
    if (!token.empty()) grid.push_back(std::stod(token));
  if (grid.empty()) throw sn::ParameterError("empty removal grid");
  return grid;
}

const char* status_name(sn::PowerIterationResult::Status s) {
  switch (s) {
    case sn::PowerIterationResult::Status::kConverged: return "converged";
    case sn::PowerIterationResult::Status::kCycleAveraged: return "cycle_averaged";
    case sn::PowerIterationResult::Status::kMaxIterations: return "max_iterations";
  }
  return "?";
}

// ---------------------------------------------------------------------------

int cmd_stats(const CommonArgs& args) {
  RunContext ctx = make_context("stats", args);
  const auto s = sn::structural_summary(ctx.graph);
  const auto labels = sn::component_labels(ctx.graph);
  const sn::NodeId comps =
      labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<std::size_t> sizes(comps, 0);
  for (sn::NodeId l : labels) ++sizes[l];
  const std::size_t largest = sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());

  auto out = ctx.file("stats.csv");
  out << "stat,value\n";
  out << "nodes," << s.nodes << '\n';
  out << "edges," << s.edges << '\n';
  out << "avg_degree," << sn::format_fixed(s.avg_degree, 6) << '\n';
  out << "degree_assortativity," << sn::format_fixed(s.degree_assortativity, 6) << '\n';
  out << "avg_clustering," << sn::format_fixed(s.avg_clustering, 6) << '\n';
  out << "components," << comps << '\n';
  out << "largest_component," << largest << '\n';

  std::cout << ctx.dataset.label() << ": N=" << s.nodes << " L=" << s.edges
            << " <k>=" << sn::format_fixed(s.avg_degree, 3)
            << " assortativity=" << sn::format_fixed(s.degree_assortativity, 3)
            << " clustering=" << sn::format_fixed(s.avg_clustering, 3) << " components=" << comps
            << "\n";
  ctx.finish();
  return 0;
}

int cmd_centrality(const CommonArgs& args, const std::string& metric_name) {
  RunContext ctx = make_context("centrality", args);
  const auto features = sn::assign_features(
      ctx.graph, sn::key_hash(args.rng_seed, sn::detail::kFeatureStageTag, 0));
  const auto model = sn::InfectionModel::from_name(args.model_name);
  const auto p = sn::edge_probabilities(ctx.graph, features, model);

  std::vector<sn::CentralityScores> scores;
  if (!metric_name.empty()) {
    scores.push_back(sn::compute_metric(ctx.graph, p, sn::metric_from_name(metric_name)));
    ctx.opt("metric", metric_name);
  } else {
    const auto all = sn::compute_all_metrics(ctx.graph, p);
    for (sn::Metric m : sn::kAllMetrics)
      scores.push_back({sn::metric_name(m), all.of(m)});
    ctx.manifest.set("pagerank_status", status_name(all.pagerank_status));
    ctx.manifest.set("weighted_pagerank_status", status_name(all.weighted_pagerank_status));
  }

  {
    auto out = ctx.file("scores.csv");
    sn::write_scores_csv(out, scores);
  }
  {
    auto out = ctx.file("features.csv");
    sn::write_features_csv(out, features);
  }
  {
    auto out = ctx.file("probabilities.csv");
    sn::write_probabilities_csv(out, ctx.graph, p);
  }
  ctx.manifest.set("eccentricity_sign_note",
                   "raw distances: larger ecc = more peripheral; correlations use raw scores");
  std::cout << "wrote scores for " << scores.size() << " metric(s) over "
            << ctx.graph.node_count() << " nodes to " << ctx.out_dir << "\n";
  ctx.finish();
  return 0;
}

int cmd_capacity(const CommonArgs& args, std::size_t runs) {
  RunContext ctx = make_context("capacity", args);
  const auto features = sn::assign_features(
      ctx.graph, sn::key_hash(args.rng_seed, sn::detail::kFeatureStageTag, 0));
  const auto model = sn::InfectionModel::from_name(args.model_name);
  const auto p = sn::edge_probabilities(ctx.graph, features, model);
  const auto caps = sn::per_node_capacity(
      ctx.graph, p, runs, sn::key_hash(args.rng_seed, sn::detail::kCapacityStageTag));

  ctx.opt("runs", runs);
  ctx.manifest.set("capacity_stage_key",
                   hex_key(sn::key_hash(args.rng_seed, sn::detail::kCapacityStageTag)));
  {
    auto out = ctx.file("capacity.csv");
    sn::write_capacity_csv(out, caps);
  }
  {
    auto out = ctx.file("features.csv");
    sn::write_features_csv(out, features);
  }
  {
    auto out = ctx.file("probabilities.csv");
    sn::write_probabilities_csv(out, ctx.graph, p);
  }
  double best = 0;
  sn::NodeId best_node = 0;
  for (sn::NodeId i = 0; i < ctx.graph.node_count(); ++i) {
    if (caps[i].mean_fraction > best) {
      best = caps[i].mean_fraction;
      best_node = i;
    }
  }
  std::cout << "capacity over " << runs << " runs/node; best node " << best_node << " spreads to "
            << sn::format_fixed(100 * best, 1) << "% of the network\n";
  ctx.finish();
  return 0;
}

int cmd_tim(const CommonArgs& args, std::size_t k, double seed_fraction, std::size_t theta,
            double epsilon) {
  RunContext ctx = make_context("tim", args);
  const auto features = sn::assign_features(
      ctx.graph, sn::key_hash(args.rng_seed, sn::detail::kFeatureStageTag, 0));
  const auto model = sn::InfectionModel::from_name(args.model_name);
  const auto p = sn::edge_probabilities(ctx.graph, features, model);

  if (k == 0)
    k = std::max<std::size_t>(
        1, static_cast<std::size_t>(seed_fraction * static_cast<double>(ctx.graph.node_count())));
  sn::SampleBudget budget = epsilon > 0 ? sn::SampleBudget::auto_epsilon(epsilon)
                            : theta > 0 ? sn::SampleBudget::fixed(theta)
                                        : sn::SampleBudget::default_for(ctx.graph.node_count());
  const auto sel = sn::select_seeds(ctx.graph, p, k, budget,
                                    sn::key_hash(args.rng_seed, sn::detail::kTimStageTag));

  ctx.opt("k", k);
  if (epsilon > 0) {
    ctx.opt("epsilon", epsilon);
    ctx.manifest.set("theta_resolved", sel.theta);
  } else {
    ctx.opt("theta", sel.theta);
  }
  if (!std::isnan(sel.kpt_estimate)) ctx.manifest.set("kpt_estimate", sel.kpt_estimate);
  if (!std::isnan(sel.lambda)) ctx.manifest.set("lambda", sel.lambda);
  ctx.manifest.set("coverage_fraction", sel.coverage_fraction);
  ctx.manifest.set("estimated_spread", sel.estimated_spread);
  if (sel.truncated) ctx.manifest.set("seeds_truncated", std::string("true"));

  {
    auto out = ctx.file("seeds.csv");
    sn::write_seeds_csv(out, ctx.graph, sel);
  }
  {
    auto out = ctx.file("features.csv");
    sn::write_features_csv(out, features);
  }
  {
    auto out = ctx.file("probabilities.csv");
    sn::write_probabilities_csv(out, ctx.graph, p);
  }
  std::cout << "selected " << sel.seeds.size() << " seeds from " << sel.theta
            << " RR sets; estimated spread " << sn::format_fixed(sel.estimated_spread, 2)
            << " nodes (" << sn::format_fixed(100 * sel.coverage_fraction, 2) << "% coverage)\n";
  ctx.finish();
  return 0;
}

int cmd_exp_table2(const CommonArgs& args, const std::string& models_csv, std::size_t runs) {
  RunContext ctx = make_context("exp-table2", args);
  sn::ExperimentConfig cfg;
  cfg.dataset = ctx.dataset;
  cfg.models = parse_model_list(models_csv);
  cfg.runs_per_seed = runs;
  cfg.rng_seed = args.rng_seed;

  const auto table = sn::exp_metric_association(cfg, ctx.graph);

  ctx.opt("models", models_csv);
  ctx.opt("runs", runs);
  ctx.manifest.set("feature_stage_key",
                   hex_key(sn::key_hash(args.rng_seed, sn::detail::kFeatureStageTag, 0)));
  ctx.manifest.set("capacity_stage_key",
                   hex_key(sn::key_hash(args.rng_seed, sn::detail::kCapacityStageTag)));
  ctx.manifest.set("eccentricity_sign_note",
                   "ecc correlated raw (inversely related to centrality); average row includes it");
  {
    auto out = ctx.file("report.csv");
    sn::write_association_csv(out, ctx.dataset.label(), table);
  }
  {
    const auto features = sn::assign_features(
        ctx.graph, sn::key_hash(args.rng_seed, sn::detail::kFeatureStageTag, 0));
    auto out = ctx.file("features.csv");
    sn::write_features_csv(out, features);
  }
  for (const auto& avg : table.averages)
    std::cout << avg.model << ": avg pearson=" << sn::format_fixed(avg.pearson_r, 3)
              << " spearman=" << sn::format_fixed(avg.spearman_rho, 3)
              << " kendall=" << sn::format_fixed(avg.kendall_tau, 3)
              << " top10=" << sn::format_fixed(avg.top_precision, 3) << " (over "
              << avg.metrics_used << " metrics)\n";
  ctx.finish();
  return 0;
}

int cmd_exp_seed_degree(const CommonArgs& args, std::size_t rounds, double seed_fraction,
                        std::size_t theta) {
  RunContext ctx = make_context("exp-seed-degree", args);
  sn::ExperimentConfig cfg;
  cfg.dataset = ctx.dataset;
  cfg.rounds = rounds;
  cfg.seed_policy = sn::SeedPolicy::tim_fraction(seed_fraction);
  cfg.rng_seed = args.rng_seed;
  if (theta > 0) cfg.tim_budget = sn::SampleBudget::fixed(theta);

  const auto result = sn::exp_tim_seed_degree(cfg, ctx.graph);

  ctx.opt("rounds", rounds);
  ctx.opt("seed-fraction", seed_fraction);
  ctx.opt("theta", cfg.resolved_tim_budget(ctx.graph.node_count()).theta);
  ctx.manifest.set("seeds_per_round", result.seeds_per_round);
  {
    auto out = ctx.file("seed_degrees.csv");
    sn::write_seed_degree_csv(out, result);
  }
  {
    auto out = ctx.file("seed_degree_summary.csv");
    sn::write_seed_degree_summary_csv(out, result);
  }
  double iqr[2] = {0, 0};  // constant, i_s
  for (const auto& s : result.summaries) (s.model == "constant" ? iqr[0] : iqr[1]) += s.iqr;
  const double r = static_cast<double>(rounds);
  std::cout << "mean seed-degree IQR over " << rounds
            << " rounds: constant=" << sn::format_fixed(iqr[0] / r, 2)
            << " i_s=" << sn::format_fixed(iqr[1] / r, 2) << "\n";
  ctx.finish();
  return 0;
}

int cmd_exp_seed_corr(const CommonArgs& args, std::size_t runs) {
  RunContext ctx = make_context("exp-seed-corr", args);
  sn::ExperimentConfig cfg;
  cfg.dataset = ctx.dataset;
  cfg.models = {sn::InfectionModel::from_name(args.model_name)};
  cfg.runs_per_seed = runs;
  cfg.rng_seed = args.rng_seed;

  const auto rows = sn::exp_seed_feature_correlation(cfg, ctx.graph);

  ctx.opt("runs", runs);
  {
    auto out = ctx.file("feature_correlation.csv");
    sn::write_feature_correlation_csv(out, ctx.dataset.label(), rows);
  }
  {
    const auto features = sn::assign_features(
        ctx.graph, sn::key_hash(args.rng_seed, sn::detail::kFeatureStageTag, 0));
    auto out = ctx.file("features.csv");
    sn::write_features_csv(out, features);
  }
  for (const auto& row : rows)
    std::cout << "capacity ~ " << row.feature
              << ": spearman=" << sn::format_fixed(row.report.spearman_rho, 3) << "\n";
  ctx.finish();
  return 0;
}

int cmd_exp_removal(const CommonArgs& args, const std::string& policy_text,
                    const std::string& grid_csv, std::size_t realizations, std::size_t theta) {
  RunContext ctx = make_context("exp-removal", args);
  sn::ExperimentConfig cfg;
  cfg.dataset = ctx.dataset;
  cfg.models = {sn::InfectionModel::from_name(args.model_name)};
  cfg.seed_policy = sn::SeedPolicy::parse(policy_text);
  cfg.removal_grid = parse_grid(grid_csv);
  cfg.realizations = realizations;
  cfg.rng_seed = args.rng_seed;
  if (theta > 0) cfg.tim_budget = sn::SampleBudget::fixed(theta);

  const auto points = sn::exp_removal(cfg, ctx.graph);

  ctx.opt("seed-policy", policy_text);
  ctx.opt("grid", grid_csv);
  ctx.opt("realizations", realizations);
  if (cfg.seed_policy.uses_tim())
    ctx.opt("theta", cfg.resolved_tim_budget(ctx.graph.node_count()).theta);
  {
    auto out = ctx.file("removal_curves.csv");
    sn::write_removal_csv(out, ctx.dataset.label(), points);
  }
  for (const auto& pt : points) {
    if (pt.phi == cfg.removal_grid.back())
      std::cout << pt.strategy << " @ phi=" << sn::format_fixed(pt.phi, 2)
                << ": mean spread=" << sn::format_fixed(pt.mean_spread, 4) << " ci=["
                << sn::format_fixed(pt.ci95_low, 4) << ", " << sn::format_fixed(pt.ci95_high, 4)
                << "]\n";
  }
  ctx.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spreading-process experiments on feature-weighted networks"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Manifest/config file (key=value; <command>.<option> keys route to that "
                 "command); explicit flags win");
  app.allow_config_extras(true);

  CommonArgs args;

  auto* stats = app.add_subcommand("stats", "Structural summary of a dataset");
  add_common_options(stats, args);

  std::string metric;
  auto* centrality = app.add_subcommand("centrality", "Export centrality scores");
  add_common_options(centrality, args);
  centrality->add_option("--metric", metric, "Single metric name (default: all 12)");

  std::size_t capacity_runs = 100;
  auto* capacity = app.add_subcommand("capacity", "Per-node spreading capacity (Monte Carlo)");
  add_common_options(capacity, args);
  capacity->add_option("--runs", capacity_runs, "Cascades per node");

  std::size_t tim_k = 0, tim_theta = 0;
  double tim_fraction = 0.01, tim_epsilon = 0.0;
  auto* tim = app.add_subcommand("tim", "Influence-maximization seed selection");
  add_common_options(tim, args);
  tim->add_option("--k", tim_k, "Seed count (overrides --seed-fraction)");
  tim->add_option("--seed-fraction", tim_fraction, "Seed count as a fraction of n");
  tim->add_option("--theta", tim_theta, "RR sample count (default 200*n)");
  tim->add_option("--epsilon", tim_epsilon, "Auto sample budget parameter (overrides --theta)");

  std::string models_csv = "constant,avg_s,i,i_s";
  std::size_t table2_runs = 100;
  auto* table2 = app.add_subcommand("exp-table2", "Capacity vs. centrality associations");
  add_common_options(table2, args);
  table2->add_option("--models", models_csv, "Comma-separated infection models");
  table2->add_option("--runs", table2_runs, "Cascades per node");

  std::size_t sd_rounds = 10, sd_theta = 0;
  double sd_fraction = 0.01;
  auto* seed_degree = app.add_subcommand("exp-seed-degree", "TIM seed-degree dispersion");
  add_common_options(seed_degree, args);
  seed_degree->add_option("--rounds", sd_rounds, "Feature redraw rounds");
  seed_degree->add_option("--seed-fraction", sd_fraction, "Seed count as a fraction of n");
  seed_degree->add_option("--theta", sd_theta, "RR sample count (default 200*n)");

  std::size_t corr_runs = 1000;
  auto* seed_corr = app.add_subcommand("exp-seed-corr", "Capacity vs. node features");
  add_common_options(seed_corr, args);
  seed_corr->add_option("--runs", corr_runs, "Cascades per node");

  std::string policy_text = "top-degree:0.01";
  std::string grid_csv = "0,0.1,0.2,0.3,0.4,0.5";
  std::size_t removal_realizations = 100, removal_theta = 0;
  auto* removal = app.add_subcommand("exp-removal", "Spread under progressive node removal");
  add_common_options(removal, args);
  removal->add_option("--seed-policy", policy_text,
                      "random:<f> | top-degree:<f> | tim:<f> | random-count:<c> | tim-count:<c>");
  removal->add_option("--grid", grid_csv, "Comma-separated removal fractions (ascending, from 0)");
  removal->add_option("--realizations", removal_realizations, "Feature/cascade realizations");
  removal->add_option("--theta", removal_theta, "RR sample count for tim policies");

  CLI11_PARSE(app, argc, argv);

  try {
    if (stats->parsed()) return cmd_stats(args);
    if (centrality->parsed()) return cmd_centrality(args, metric);
    if (capacity->parsed()) return cmd_capacity(args, capacity_runs);
    if (tim->parsed()) return cmd_tim(args, tim_k, tim_fraction, tim_theta, tim_epsilon);
    if (table2->parsed()) return cmd_exp_table2(args, models_csv, table2_runs);
    if (seed_degree->parsed()) return cmd_exp_seed_degree(args, sd_rounds, sd_fraction, sd_theta);
    if (seed_corr->parsed()) return cmd_exp_seed_corr(args, corr_runs);
    if (removal->parsed())
      return cmd_exp_removal(args, policy_text, grid_csv, removal_realizations, removal_theta);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
