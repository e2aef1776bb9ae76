#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "groupform/checkpoint.hpp"

namespace groupform::cli {

namespace {

namespace fs = std::filesystem;

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

WeightedGraph input_graph(const RunConfig& cfg) {
  if (!cfg.graph.empty()) return load_graph_file(cfg.graph);
  if (!cfg.records.empty()) {
    return normalize_weights(groupform::build_graph(read_records_csv_file(cfg.records)));
  }
  throw std::invalid_argument("no input: set graph or records");
}

fs::path output_dir(const RunConfig& cfg) {
  if (cfg.output_dir.empty()) throw std::invalid_argument("output_dir is not set");
  fs::create_directories(cfg.output_dir);
  return cfg.output_dir;
}

}  // namespace

void gen_synthetic(const SyntheticSpec& spec, const std::string& out_path) {
  const auto records = generate_synthetic(spec);
  auto out = open_output(out_path);
  write_records_csv(out, records);
}

GraphStats build_graph(const std::string& records_path, const std::string& out_path, double tau,
                       DegreeMode mode, std::ostream& log) {
  const WeightedGraph g = normalize_weights(groupform::build_graph(read_records_csv_file(records_path)));
  const GraphStats stats = graph_stats(g, tau, mode);
  save_graph_file(out_path, g);
  auto out = open_output(out_path + ".stats");
  write_graph_stats(out, stats);
  write_graph_stats(log, stats);
  return stats;
}

TrainSummary train(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const fs::path dir = output_dir(cfg);
  const WeightedGraph initial = input_graph(cfg);
  {
    auto echo = open_output(dir / "train.config");
    cfg.echo(echo);
  }

  MaddpgTrainer trainer(initial, cfg.env, cfg.train);
  trainer.train();

  TrainSummary summary;
  summary.trend = score_trend(trainer.scores());
  summary.initial_edges = initial.edge_count(cfg.env.prune_threshold);
  summary.final_edges = trainer.current_graph().edge_count(cfg.env.prune_threshold);

  {
    auto out = open_output(dir / "scores.csv");
    write_scores_csv(out, trainer.scores());
  }
  save_graph_file((dir / "initial_graph.json").string(), initial);
  save_graph_file((dir / "final_graph.json").string(), trainer.current_graph());
  {
    auto out = open_output(dir / "checkpoint.txt");
    save_checkpoint(out, trainer);
  }

  log << "episodes=" << trainer.scores().size()
      << "\nfirst_decile_mean=" << format_double(summary.trend.first_decile_mean)
      << "\nlast_decile_mean=" << format_double(summary.trend.last_decile_mean)
      << "\nedges_initial=" << summary.initial_edges << "\nedges_final=" << summary.final_edges
      << '\n';
  return summary;
}

ClusterAssignment cluster(const RunConfig& cfg, std::ostream& log) {
  const fs::path dir = output_dir(cfg);
  if (cfg.graph.empty()) throw std::invalid_argument("graph is not set");
  const WeightedGraph g = load_graph_file(cfg.graph);
  const ClusterConfig cc = cfg.cluster_for(g.size());
  const ClusterAssignment a = cluster_participants(g, cc);
  const ValidationResult check = validate_assignment(a, cc, g.size());
  if (!check) {
    std::string reasons;
    for (const auto& r : check.reasons) reasons += (reasons.empty() ? "" : "; ") + r;
    throw std::logic_error("invalid assignment: " + reasons);
  }
  {
    auto echo = open_output(dir / "cluster.config");
    cfg.echo(echo);
  }
  auto out = open_output(dir / "groups.csv");
  write_groups_csv(out, a);
  write_groups_csv(log, a);
  return a;
}

void export_graph(const std::string& graph_path, const std::string& format, double tau,
                  bool keep_pruned, const std::string& out_path) {
  const GraphFormat f = parse_graph_format(format);
  const WeightedGraph g = load_graph_file(graph_path);
  auto out = open_output(out_path);
  write_graph(out, g, f, GraphExportOptions{tau, keep_pruned});
}

}  // namespace groupform::cli
