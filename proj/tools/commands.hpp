#pragma once
// Subcommand implementations behind the groupform executable.

#include <iosfwd>
#include <string>

#include "groupform/clustering.hpp"
#include "groupform/io.hpp"
#include "groupform/maddpg.hpp"
#include "groupform/run_config.hpp"
#include "groupform/synthetic.hpp"

namespace groupform::cli {

/// Writes synthetic records to `out_path`.
void gen_synthetic(const SyntheticSpec& spec, const std::string& out_path);

/// Reads records, writes the normalized graph to `out_path` and its stats to
/// `out_path + ".stats"`.
GraphStats build_graph(const std::string& records_path, const std::string& out_path,
                       double tau, DegreeMode mode, std::ostream& log);

struct TrainSummary {
  TrendSummary trend;
  std::size_t initial_edges = 0;
  std::size_t final_edges = 0;
};

/// Trains on cfg.graph (or on the graph built from cfg.records) and writes
/// scores.csv, initial_graph.json, final_graph.json, checkpoint.txt and
/// train.config into cfg.output_dir.
TrainSummary train(const RunConfig& cfg, std::ostream& log);

/// Clusters the nodes of cfg.graph and writes groups.csv and cluster.config
/// into cfg.output_dir.
ClusterAssignment cluster(const RunConfig& cfg, std::ostream& log);

void export_graph(const std::string& graph_path, const std::string& format, double tau,
                  bool keep_pruned, const std::string& out_path);

}  // namespace groupform::cli
