#pragma once
// Participants, interaction records and the weighted collaboration graph.

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace groupform {

/// Dense participant index, 0..n-1, assigned by first appearance.
struct ParticipantId {
  std::size_t value = 0;

  friend auto operator<=>(const ParticipantId&, const ParticipantId&) = default;
};

/// One (participant, group, task, thematic code) observation.
struct InteractionRecord {
  std::string participant;
  std::string group;
  std::string task;
  std::string code;

  friend bool operator==(const InteractionRecord&, const InteractionRecord&) = default;
};

/// Trim ASCII whitespace and fold ASCII letters to lower case.
std::string standardize(std::string_view text);

/// Standardizes every field of a record.
InteractionRecord standardize(const InteractionRecord& record);

/// Symmetric weight matrix with zero diagonal over n labelled nodes.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(std::size_t n);
  WeightedGraph(std::size_t n, std::vector<std::string> labels);

  /// Builds from a full row-major n*n matrix. Throws std::invalid_argument
  /// unless the matrix is square, symmetric, finite, non-negative and has a
  /// zero diagonal.
  static WeightedGraph from_matrix(std::size_t n, std::vector<double> weights,
                                   std::vector<std::string> labels = {});

  std::size_t size() const { return n_; }
  double weight(std::size_t i, std::size_t j) const { return weights_[i * n_ + j]; }

  /// Sets w_ij and w_ji. Self loops are rejected.
  void set_weight(std::size_t i, std::size_t j, double w);

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }

  double max_weight() const;
  double total_weight() const;  // sum over i<j
  bool has_positive_weight() const;

  /// Number of unordered pairs with weight strictly above tau.
  std::size_t edge_count(double tau) const;

  /// Upper triangle, row-major, length n(n-1)/2.
  std::vector<double> upper_triangle() const;

  static std::size_t pair_count(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

 private:
  std::size_t n_ = 0;
  std::vector<double> weights_;
  std::vector<std::string> labels_;
};

/// Maps standardized participant names to dense ids.
class ParticipantIndex {
 public:
  ParticipantIndex() = default;
  /// Pins an explicit order; duplicates are rejected.
  explicit ParticipantIndex(std::vector<std::string> names);

  /// First-appearance order over standardized participant names.
  static ParticipantIndex from_records(const std::vector<InteractionRecord>& records);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  ParticipantId id_of(const std::string& standardized_name) const;
  bool contains(const std::string& standardized_name) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> ids_;
};

/// Raw integer co-occurrence weights: for each group and each pair of its
/// members, the number of distinct codes both were attributed in that group.
/// Pairs sharing several groups accumulate. Ids follow first appearance.
WeightedGraph build_graph(const std::vector<InteractionRecord>& records);

/// Same, with ids pinned by `index` (every participant must be present).
WeightedGraph build_graph(const std::vector<InteractionRecord>& records,
                          const ParticipantIndex& index);

/// Divides every weight by the global maximum.
/// Throws std::domain_error on a graph with no positive weight.
WeightedGraph normalize_weights(const WeightedGraph& g);

}  // namespace groupform
