// groupform: build collaboration graphs, optimize them with MADDPG and form
// size-capped groups.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using groupform::RunConfig;

std::string dashed(std::string key) {
  for (char& c : key) {
    if (c == '_') c = '-';
  }
  return key;
}

// Exposes every RunConfig key as --key-name plus --config and --set.
struct ConfigFlags {
  std::string config_file;
  std::vector<std::string> assignments;
  std::map<std::string, std::string> values;
  std::vector<std::pair<std::string, CLI::Option*>> options;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_file, "key = value configuration file");
    cmd->add_option("--set", assignments, "override a setting, key=value (repeatable)");
    for (const auto& [key, unused] : RunConfig{}.values()) {
      options.emplace_back(key, cmd->add_option("--" + dashed(key), values[key], "setting " + key));
    }
  }

  RunConfig resolve() const {
    RunConfig cfg;
    if (!config_file.empty()) cfg.load_file(config_file);
    for (const auto& a : assignments) {
      const auto eq = a.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value");
      cfg.set(a.substr(0, eq), a.substr(eq + 1));
    }
    for (const auto& [key, option] : options) {
      if (option->count() > 0) cfg.set(key, values.at(key));
    }
    return cfg;
  }
};

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collaboration graph optimization and group formation"};
  app.require_subcommand(1);

  // gen-synthetic
  groupform::SyntheticSpec spec;
  std::string synthetic_out;
  auto* gen = app.add_subcommand("gen-synthetic", "write a synthetic interaction CSV");
  gen->add_option("--participants", spec.participants, "participant count");
  gen->add_option("--groups", spec.groups, "group count");
  gen->add_option("--codes", spec.codes, "shared codes per group");
  gen->add_option("--tasks", spec.tasks, "task count");
  gen->add_option("--density", spec.overlap_density, "chance of holding each shared code");
  gen->add_option("--seed", spec.seed, "random seed");
  gen->add_option("-o,--output", synthetic_out, "output CSV")->required();

  // build-graph
  std::string records_in;
  std::string graph_out;
  double build_tau = groupform::kDefaultPruneThreshold;
  std::string build_degree = "weighted";
  auto* build = app.add_subcommand("build-graph", "build a normalized graph from records");
  build->add_option("-i,--records", records_in, "interaction CSV")->required();
  build->add_option("-o,--output", graph_out, "graph file (node-link JSON)")->required();
  build->add_option("--prune-threshold", build_tau, "edge threshold for the stats");
  build->add_option("--degree-mode", build_degree, "weighted or binary")
      ->check(CLI::IsMember({"weighted", "binary"}));

  // train
  ConfigFlags train_flags;
  auto* train = app.add_subcommand("train", "optimize a graph with MADDPG");
  train_flags.attach(train);

  // cluster
  ConfigFlags cluster_flags;
  auto* cluster = app.add_subcommand("cluster", "partition graph nodes into capped groups");
  cluster_flags.attach(cluster);

  // export
  std::string export_in;
  std::string export_out;
  std::string export_format = "graphml";
  double export_tau = groupform::kDefaultPruneThreshold;
  bool keep_pruned = false;
  auto* exporter = app.add_subcommand("export", "convert a graph file for visualizers");
  exporter->add_option("-g,--graph", export_in, "graph file")->required();
  exporter->add_option("-o,--output", export_out, "output file")->required();
  exporter->add_option("-f,--format", export_format, "node-link, graphml or edgelist");
  exporter->add_option("--prune-threshold", export_tau, "pairs at or below are not edges");
  exporter->add_flag("--keep-pruned", keep_pruned, "keep weak pairs as flagged edges");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << one_line(e.what()) << '\n';
    return 2;
  }

  try {
    if (gen->parsed()) {
      groupform::cli::gen_synthetic(spec, synthetic_out);
    } else if (build->parsed()) {
      const auto mode = build_degree == "binary" ? groupform::DegreeMode::binary
                                                 : groupform::DegreeMode::weighted;
      groupform::cli::build_graph(records_in, graph_out, build_tau, mode, std::cout);
    } else if (train->parsed()) {
      groupform::cli::train(train_flags.resolve(), std::cout);
    } else if (cluster->parsed()) {
      groupform::cli::cluster(cluster_flags.resolve(), std::cout);
    } else if (exporter->parsed()) {
      groupform::cli::export_graph(export_in, export_format, export_tau, keep_pruned, export_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << one_line(e.what()) << '\n';
    return 1;
  }
  return 0;
}
