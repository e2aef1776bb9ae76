#include "groupform/metrics.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace groupform {

namespace {

void require_pairs(const WeightedGraph& g) {
  if (g.size() < 2) throw std::domain_error("metric undefined: fewer than two nodes");
}

double mean(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace

double overall_connectivity(const WeightedGraph& g) {
  require_pairs(g);
  return g.total_weight() / static_cast<double>(WeightedGraph::pair_count(g.size()));
}

double weighted_degree(const WeightedGraph& g, ParticipantId i) {
  if (i.value >= g.size()) throw std::out_of_range("participant index out of range");
  double sum = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) sum += g.weight(i.value, j);
  return sum;
}

std::vector<double> degrees(const WeightedGraph& g, DegreeMode mode, double tau) {
  std::vector<double> out(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (mode == DegreeMode::weighted) {
      out[i] = weighted_degree(g, ParticipantId{i});
    } else {
      for (std::size_t j = 0; j < g.size(); ++j) {
        if (g.weight(i, j) > tau) out[i] += 1.0;
      }
    }
  }
  return out;
}

double degree_variance(const WeightedGraph& g, DegreeMode mode, double tau) {
  if (g.size() == 0) throw std::domain_error("metric undefined: empty graph");
  const auto d = degrees(g, mode, tau);
  const double m = mean(d);
  double sum = 0.0;
  for (double v : d) sum += (v - m) * (v - m);
  return sum / static_cast<double>(d.size());
}

double average_path_length(const WeightedGraph& g, double tau) {
  require_pairs(g);
  const std::size_t n = g.size();

  std::vector<std::vector<std::size_t>> adjacency(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && g.weight(i, j) > tau) adjacency[i].push_back(j);
    }
  }

  constexpr std::size_t unreached = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(n);
  double total = 0.0;
  for (std::size_t source = 0; source < n; ++source) {
    std::fill(dist.begin(), dist.end(), unreached);
    dist[source] = 0;
    std::queue<std::size_t> frontier;
    frontier.push(source);
    while (!frontier.empty()) {
      const std::size_t u = frontier.front();
      frontier.pop();
      for (std::size_t v : adjacency[u]) {
        if (dist[v] == unreached) {
          dist[v] = dist[u] + 1;
          frontier.push(v);
        }
      }
    }
    for (std::size_t target = source + 1; target < n; ++target) {
      total += static_cast<double>(dist[target] == unreached ? n : dist[target]);
    }
  }
  return total / static_cast<double>(WeightedGraph::pair_count(n));
}

double dominance_penalty(const WeightedGraph& g, DegreeMode mode, double tau) {
  if (g.size() == 0) throw std::domain_error("metric undefined: empty graph");
  const auto d = degrees(g, mode, tau);
  const double top = *std::max_element(d.begin(), d.end());
  // the mean of equal values can round one ulp above them
  return std::max(0.0, top - mean(d));
}

}  // namespace groupform
