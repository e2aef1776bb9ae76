#pragma once
// Flat key=value run configuration shared by the command-line tools.
//
// Resolution order: built-in defaults, then a config file, then flags. The
// resolved configuration is echoed in the same format, so an echo file alone
// reproduces a run.

#include <iosfwd>
#include <map>
#include <string>

#include "groupform/clustering.hpp"
#include "groupform/environment.hpp"
#include "groupform/maddpg.hpp"

namespace groupform {

struct RunConfig {
  EnvConfig env;
  TrainConfig train;
  ClusterConfig cluster;
  std::size_t cap = 0;  // 0 -> ceil(n / k)

  std::string records;     // input interaction CSV
  std::string graph;       // input graph file
  std::string output_dir;  // where outputs and the echo go

  /// Applies one setting. Throws std::invalid_argument on an unknown key or a
  /// value that does not parse.
  void set(const std::string& key, const std::string& value);

  /// Reads `key = value` lines; `#` starts a comment.
  void load(std::istream& in, const std::string& source = "<config>");
  void load_file(const std::string& path);

  /// Every key with its resolved value, sorted by key.
  std::map<std::string, std::string> values() const;
  void echo(std::ostream& out) const;

  /// Validates the environment and training sections.
  void validate() const;

  /// ClusterConfig with cap resolved against n.
  ClusterConfig cluster_for(std::size_t n) const;
};

}  // namespace groupform
