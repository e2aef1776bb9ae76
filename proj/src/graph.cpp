#include "groupform/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace groupform {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

void check_record(const InteractionRecord& r, std::size_t row) {
  auto fail = [row](const char* field) {
    throw std::invalid_argument("record " + std::to_string(row) + ": empty field '" +
                                field + "'");
  };
  if (r.participant.empty()) fail("participant");
  if (r.group.empty()) fail("group");
  if (r.task.empty()) fail("task");
  if (r.code.empty()) fail("code");
}

}  // namespace

std::string standardize(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && is_space(text[begin])) ++begin;
  while (end > begin && is_space(text[end - 1])) --end;
  std::string out(text.substr(begin, end - begin));
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

InteractionRecord standardize(const InteractionRecord& record) {
  return {standardize(record.participant), standardize(record.group),
          standardize(record.task), standardize(record.code)};
}

// ---------------------------------------------------------------------------
// WeightedGraph

WeightedGraph::WeightedGraph(std::size_t n) : n_(n), weights_(n * n, 0.0) {
  labels_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels_.push_back(std::to_string(i));
}

WeightedGraph::WeightedGraph(std::size_t n, std::vector<std::string> labels)
    : n_(n), weights_(n * n, 0.0), labels_(std::move(labels)) {
  if (labels_.size() != n) {
    throw std::invalid_argument("label count " + std::to_string(labels_.size()) +
                                " does not match node count " + std::to_string(n));
  }
}

WeightedGraph WeightedGraph::from_matrix(std::size_t n, std::vector<double> weights,
                                         std::vector<std::string> labels) {
  if (weights.size() != n * n) {
    throw std::invalid_argument("weight matrix must be n x n");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (weights[i * n + i] != 0.0) {
      throw std::invalid_argument("weight matrix diagonal must be zero");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double w = weights[i * n + j];
      if (!std::isfinite(w) || w < 0.0) {
        throw std::invalid_argument("weights must be finite and non-negative");
      }
      if (w != weights[j * n + i]) {
        throw std::invalid_argument("weight matrix must be symmetric");
      }
    }
  }
  WeightedGraph g = labels.empty() ? WeightedGraph(n) : WeightedGraph(n, std::move(labels));
  g.weights_ = std::move(weights);
  return g;
}

void WeightedGraph::set_weight(std::size_t i, std::size_t j, double w) {
  if (i >= n_ || j >= n_) throw std::out_of_range("node index out of range");
  if (i == j) throw std::invalid_argument("self loops are not allowed");
  if (!std::isfinite(w) || w < 0.0) {
    throw std::invalid_argument("weights must be finite and non-negative");
  }
  weights_[i * n_ + j] = w;
  weights_[j * n_ + i] = w;
}

double WeightedGraph::max_weight() const {
  double m = 0.0;
  for (double w : weights_) m = std::max(m, w);
  return m;
}

double WeightedGraph::total_weight() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) sum += weights_[i * n_ + j];
  }
  return sum;
}

bool WeightedGraph::has_positive_weight() const {
  return std::any_of(weights_.begin(), weights_.end(), [](double w) { return w > 0.0; });
}

std::size_t WeightedGraph::edge_count(double tau) const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (weights_[i * n_ + j] > tau) ++count;
    }
  }
  return count;
}

std::vector<double> WeightedGraph::upper_triangle() const {
  std::vector<double> out;
  out.reserve(pair_count(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) out.push_back(weights_[i * n_ + j]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// ParticipantIndex

ParticipantIndex::ParticipantIndex(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!ids_.emplace(names_[i], i).second) {
      throw std::invalid_argument("duplicate participant '" + names_[i] + "'");
    }
  }
}

ParticipantIndex ParticipantIndex::from_records(const std::vector<InteractionRecord>& records) {
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (const auto& r : records) {
    std::string name = standardize(r.participant);
    if (seen.insert(name).second) names.push_back(std::move(name));
  }
  return ParticipantIndex(std::move(names));
}

ParticipantId ParticipantIndex::id_of(const std::string& standardized_name) const {
  auto it = ids_.find(standardized_name);
  if (it == ids_.end()) {
    throw std::out_of_range("unknown participant '" + standardized_name + "'");
  }
  return ParticipantId{it->second};
}

bool ParticipantIndex::contains(const std::string& standardized_name) const {
  return ids_.count(standardized_name) != 0;
}

// ---------------------------------------------------------------------------
// Construction

WeightedGraph build_graph(const std::vector<InteractionRecord>& records) {
  if (records.empty()) throw std::invalid_argument("no records");
  std::vector<InteractionRecord> clean;
  clean.reserve(records.size());
  for (std::size_t row = 0; row < records.size(); ++row) {
    clean.push_back(standardize(records[row]));
    check_record(clean.back(), row + 1);
  }
  return build_graph(clean, ParticipantIndex::from_records(clean));
}

WeightedGraph build_graph(const std::vector<InteractionRecord>& records,
                          const ParticipantIndex& index) {
  if (records.empty()) throw std::invalid_argument("no records");

  // group -> participant id -> distinct codes
  std::map<std::string, std::map<std::size_t, std::set<std::string>>> codes_by_group;
  for (std::size_t row = 0; row < records.size(); ++row) {
    const InteractionRecord r = standardize(records[row]);
    check_record(r, row + 1);
    codes_by_group[r.group][index.id_of(r.participant).value].insert(r.code);
  }

  const std::size_t n = index.size();
  std::vector<double> weights(n * n, 0.0);
  for (const auto& [group, members] : codes_by_group) {
    for (auto a = members.begin(); a != members.end(); ++a) {
      for (auto b = std::next(a); b != members.end(); ++b) {
        const auto& small = a->second.size() <= b->second.size() ? a->second : b->second;
        const auto& large = a->second.size() <= b->second.size() ? b->second : a->second;
        std::size_t shared = 0;
        for (const auto& code : small) shared += large.count(code);
        weights[a->first * n + b->first] += static_cast<double>(shared);
        weights[b->first * n + a->first] += static_cast<double>(shared);
      }
    }
  }
  return WeightedGraph::from_matrix(n, std::move(weights), index.names());
}

WeightedGraph normalize_weights(const WeightedGraph& g) {
  const double max = g.max_weight();
  if (!(max > 0.0)) throw std::domain_error("degenerate graph: no interactions");
  std::vector<double> weights = g.weights();
  for (double& w : weights) w /= max;
  return WeightedGraph::from_matrix(g.size(), std::move(weights), g.labels());
}

}  // namespace groupform
