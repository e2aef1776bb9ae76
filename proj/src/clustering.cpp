#include "groupform/clustering.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace groupform {

namespace {

void check_feasible(std::size_t n, const ClusterConfig& cfg) {
  if (cfg.k == 0 || cfg.cap == 0) throw std::invalid_argument("k and cap must be positive");
  if (cfg.k * cfg.cap < n) throw std::invalid_argument("capacity exceeded");
}

std::vector<ParticipantId> shuffled(std::span<const ParticipantId> participants, Rng& rng) {
  std::vector<ParticipantId> order(participants.begin(), participants.end());
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

std::vector<ParticipantId> all_nodes(std::size_t n) {
  std::vector<ParticipantId> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = ParticipantId{i};
  return ids;
}

}  // namespace

std::size_t ClusterConfig::default_cap(std::size_t n, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be positive");
  return (n + k - 1) / k;
}

std::vector<std::vector<ParticipantId>> ClusterAssignment::groups() const {
  std::vector<std::vector<ParticipantId>> out(k);
  for (const auto& m : members) {
    if (m.cluster < k) out[m.cluster].push_back(m.participant);
  }
  return out;
}

std::vector<std::size_t> ClusterAssignment::sizes() const {
  std::vector<std::size_t> out(k, 0);
  for (const auto& m : members) {
    if (m.cluster < k) ++out[m.cluster];
  }
  return out;
}

ClusterAssignment occupancy_assign(std::span<const ParticipantId> order, const ClusterConfig& cfg) {
  check_feasible(order.size(), cfg);
  ClusterAssignment out{cfg.k, {}};
  std::vector<std::size_t> occupancy(cfg.k, 0);
  for (ParticipantId p : order) {
    std::size_t best = cfg.k;
    for (std::size_t c = 0; c < cfg.k; ++c) {
      if (occupancy[c] >= cfg.cap) continue;
      if (best == cfg.k || occupancy[c] < occupancy[best]) best = c;
    }
    ++occupancy[best];
    out.members.push_back({p, best});
  }
  return out;
}

ClusterAssignment occupancy_constrained_clustering(std::span<const ParticipantId> participants,
                                                   const ClusterConfig& cfg, Rng& rng) {
  check_feasible(participants.size(), cfg);
  const auto order = shuffled(participants, rng);
  return occupancy_assign(order, cfg);
}

ClusterAssignment weight_greedy_assign(const WeightedGraph& g,
                                       std::span<const ParticipantId> order,
                                       const ClusterConfig& cfg) {
  check_feasible(order.size(), cfg);
  ClusterAssignment out{cfg.k, {}};
  std::vector<std::vector<std::size_t>> clusters(cfg.k);
  for (ParticipantId p : order) {
    if (p.value >= g.size()) throw std::out_of_range("participant not in graph");
    std::size_t best = cfg.k;
    double best_tie = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < cfg.k; ++c) {
      if (clusters[c].size() >= cfg.cap) continue;
      double tie = 0.0;
      for (std::size_t member : clusters[c]) tie += g.weight(p.value, member);
      const bool better =
          best == cfg.k || tie > best_tie ||
          (tie == best_tie && clusters[c].size() < clusters[best].size());
      if (better) {
        best = c;
        best_tie = tie;
      }
    }
    clusters[best].push_back(p.value);
    out.members.push_back({p, best});
  }
  return out;
}

ClusterAssignment weight_greedy_constrained_clustering(const WeightedGraph& g,
                                                       const ClusterConfig& cfg, Rng& rng) {
  check_feasible(g.size(), cfg);
  const auto nodes = all_nodes(g.size());
  const auto order = shuffled(nodes, rng);
  return weight_greedy_assign(g, order, cfg);
}

ClusterAssignment cluster_participants(const WeightedGraph& g, const ClusterConfig& cfg) {
  Rng rng(cfg.seed);
  if (cfg.strategy == ClusterStrategy::weight_greedy) {
    return weight_greedy_constrained_clustering(g, cfg, rng);
  }
  const auto nodes = all_nodes(g.size());
  return occupancy_constrained_clustering(nodes, cfg, rng);
}

ValidationResult validate_assignment(const ClusterAssignment& a, const ClusterConfig& cfg,
                                     std::size_t n) {
  ValidationResult result;
  auto fail = [&](std::string reason) {
    result.ok = false;
    if (std::find(result.reasons.begin(), result.reasons.end(), reason) == result.reasons.end()) {
      result.reasons.push_back(std::move(reason));
    }
  };

  if (a.k != cfg.k) fail("cluster count mismatch");
  std::vector<std::size_t> seen(n, 0);
  std::vector<std::size_t> sizes(cfg.k, 0);
  for (const auto& m : a.members) {
    if (m.participant.value >= n) {
      fail("unknown participant");
      continue;
    }
    if (++seen[m.participant.value] > 1) fail("double assignment");
    if (m.cluster >= cfg.k) {
      fail("cluster index out of range");
      continue;
    }
    ++sizes[m.cluster];
  }
  if (std::any_of(seen.begin(), seen.end(), [](std::size_t s) { return s == 0; })) {
    fail("unassigned participant");
  }
  if (std::any_of(sizes.begin(), sizes.end(), [&](std::size_t s) { return s > cfg.cap; })) {
    fail("cap exceeded");
  }
  return result;
}

}  // namespace groupform
