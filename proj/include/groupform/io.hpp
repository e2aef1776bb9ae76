#pragma once
// File formats: interaction-record CSV, graph exchange files, score and
// group tables.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "groupform/clustering.hpp"
#include "groupform/graph.hpp"
#include "groupform/maddpg.hpp"

namespace groupform {

/// Malformed input; the message names the source and line.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --- interaction records -----------------------------------------------------

/// Reads `participant,group,task,code` CSV (header required, RFC 4180 quoting).
/// Fields are standardized; empty fields and short rows raise ParseError.
std::vector<InteractionRecord> read_records_csv(std::istream& in,
                                                const std::string& source = "<input>");
std::vector<InteractionRecord> read_records_csv_file(const std::string& path);
void write_records_csv(std::ostream& out, const std::vector<InteractionRecord>& records);

// --- graphs -------------------------------------------------------------------

enum class GraphFormat { node_link, graphml, edge_list };

/// "node-link", "graphml" or "edgelist"; std::invalid_argument otherwise.
GraphFormat parse_graph_format(const std::string& name);

struct GraphExportOptions {
  double tau = 0.0;  // pairs at or below tau are not edges
  bool keep_pruned = true;  // emit positive pairs <= tau flagged as pruned
};

/// networkx-style node-link JSON: nodes carry `id` and `label`, links carry
/// `source`, `target`, `weight` and, for pairs at or below tau, `pruned`.
void write_node_link(std::ostream& out, const WeightedGraph& g, const GraphExportOptions& opt);
WeightedGraph read_node_link(std::istream& in, const std::string& source = "<input>");

/// GraphML with `label` on nodes and `weight` / `pruned` on edges.
void write_graphml(std::ostream& out, const WeightedGraph& g, const GraphExportOptions& opt);
WeightedGraph read_graphml(std::istream& in, const std::string& source = "<input>");

/// `source,target,source_label,target_label,weight,pruned` CSV. Isolated
/// nodes are not representable, so this format is export-only.
void write_edge_list(std::ostream& out, const WeightedGraph& g, const GraphExportOptions& opt);

void write_graph(std::ostream& out, const WeightedGraph& g, GraphFormat format,
                 const GraphExportOptions& opt);

/// The graph file produced by build-graph and train: lossless node-link JSON.
void save_graph_file(const std::string& path, const WeightedGraph& g);
WeightedGraph load_graph_file(const std::string& path);

// --- tables -------------------------------------------------------------------

/// Summary written next to a built graph.
struct GraphStats {
  std::size_t n = 0;
  std::size_t edges = 0;  // pairs above tau
  double oc = 0.0;
  double var = 0.0;
  double pl = 0.0;
  double pd = 0.0;
};
GraphStats graph_stats(const WeightedGraph& g, double tau, DegreeMode mode);
void write_graph_stats(std::ostream& out, const GraphStats& s);

/// `episode,score,oc,var,pl,pd`, one row per episode.
void write_scores_csv(std::ostream& out, const std::vector<EpisodeScore>& scores);

/// `group,participant_ids` with the ids of a group space-separated in
/// assignment order.
void write_groups_csv(std::ostream& out, const ClusterAssignment& a);
ClusterAssignment read_groups_csv(std::istream& in, const std::string& source = "<input>");

/// Shortest text that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace groupform
