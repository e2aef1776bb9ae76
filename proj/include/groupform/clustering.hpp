#pragma once
// Size-capped partitioning of participants into k groups.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "groupform/graph.hpp"
#include "groupform/random.hpp"

namespace groupform {

enum class ClusterStrategy {
  occupancy,      // least-occupied non-full cluster, ignores the graph
  weight_greedy,  // non-full cluster with the strongest ties to its members
};

struct ClusterConfig {
  std::size_t k = 10;
  std::size_t cap = 5;
  std::uint64_t seed = 42;
  ClusterStrategy strategy = ClusterStrategy::occupancy;

  /// cap = ceil(n / k).
  static std::size_t default_cap(std::size_t n, std::size_t k);
};

struct Membership {
  ParticipantId participant;
  std::size_t cluster = 0;

  friend bool operator==(const Membership&, const Membership&) = default;
};

/// Memberships in assignment order.
struct ClusterAssignment {
  std::size_t k = 0;
  std::vector<Membership> members;

  /// Participants of each cluster, in the order they were assigned.
  std::vector<std::vector<ParticipantId>> groups() const;
  std::vector<std::size_t> sizes() const;

  friend bool operator==(const ClusterAssignment&, const ClusterAssignment&) = default;
};

/// Shuffles the participants, then places each into the non-full cluster
/// with the fewest members (lowest index on ties).
/// Throws std::invalid_argument("capacity exceeded") when k*cap < n.
ClusterAssignment occupancy_constrained_clustering(std::span<const ParticipantId> participants,
                                                   const ClusterConfig& cfg, Rng& rng);

/// Placement step of the above for a fixed visiting order.
ClusterAssignment occupancy_assign(std::span<const ParticipantId> order, const ClusterConfig& cfg);

/// Shuffles the nodes of `g`, then places each into the non-full cluster
/// maximizing its summed edge weight to current members; ties go to the
/// fewest members, then the lowest index.
ClusterAssignment weight_greedy_constrained_clustering(const WeightedGraph& g,
                                                       const ClusterConfig& cfg, Rng& rng);

ClusterAssignment weight_greedy_assign(const WeightedGraph& g,
                                       std::span<const ParticipantId> order,
                                       const ClusterConfig& cfg);

/// Dispatches on cfg.strategy over all nodes of `g`, seeding from cfg.seed.
ClusterAssignment cluster_participants(const WeightedGraph& g, const ClusterConfig& cfg);

struct ValidationResult {
  bool ok = true;
  std::vector<std::string> reasons;

  explicit operator bool() const { return ok; }
};

/// Checks every participant 0..n-1 is assigned exactly once to a cluster in
/// 0..k-1 and that no cluster exceeds cap.
ValidationResult validate_assignment(const ClusterAssignment& a, const ClusterConfig& cfg,
                                     std::size_t n);

}  // namespace groupform
