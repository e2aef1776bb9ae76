#pragma once
// Graph-editing environment driven by one scalar action per participant.
//
// Each agent's action alpha in [-1, 1] is mapped to a' = (alpha + 1) / 2.
// An edge is drawn with probability w_ij * a' / sum(w_kl * a'); the a'
// factor cancels, so the draw is weight-proportional whatever the action.
// The chosen weight then moves by step_size * alpha (signed) and is clamped
// to [0, 1]. MutationRule::additive restores the literal w + a' update.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "groupform/graph.hpp"
#include "groupform/metrics.hpp"
#include "groupform/random.hpp"

namespace groupform {

struct RewardWeights {
  double oc = 1.0;
  double var = 0.5;
  double pl = 0.5;
  double pd = 0.5;
};

enum class MutationRule { signed_step, additive };

struct EnvConfig {
  RewardWeights reward_weights;
  double step_size = 0.1;
  double prune_threshold = kDefaultPruneThreshold;
  std::size_t max_steps = 20;
  std::uint64_t seed = 0;
  DegreeMode degree_mode = DegreeMode::weighted;
  MutationRule mutation = MutationRule::signed_step;

  /// Throws std::invalid_argument when a field is out of its domain.
  void validate() const;
};

struct EnvState {
  WeightedGraph graph;
  std::size_t step = 0;

  std::vector<double> observation() const { return graph.upper_triangle(); }
};

struct EdgeChange {
  std::size_t i = 0;
  std::size_t j = 0;
  double old_weight = 0.0;
  double new_weight = 0.0;
};

struct StepOutcome {
  EnvState next_state;
  double reward = 0.0;
  RewardBreakdown breakdown;
  bool done = false;
  std::vector<EdgeChange> modified_edges;
};

/// (alpha + 1) / 2 after clamping alpha to [-1, 1]; bumps `clamp_count` when
/// clamping was needed.
double normalize_action(double alpha, std::size_t& clamp_count);
double normalize_action(double alpha);

/// Draws an unordered pair (i < j) with probability proportional to
/// w_ij * a'. With a' == 0 the draw is uniform over positive pairs.
/// Throws std::domain_error("no selectable edge") when no weight is positive.
std::pair<std::size_t, std::size_t> select_edge(const WeightedGraph& g, double a_prime,
                                                Rng& rng);

/// Selects one edge and mutates it in place according to cfg.mutation.
EdgeChange apply_action(WeightedGraph& g, double alpha, const EnvConfig& cfg, Rng& rng,
                        std::size_t& clamp_count);

/// oc*OC - var*Var - pl*(P_l/n) - pd*(P_d/(n-1)); raw metrics in the breakdown.
RewardBreakdown composite_reward(const WeightedGraph& g, const EnvConfig& cfg);

class GraphEnvironment {
 public:
  explicit GraphEnvironment(EnvConfig cfg);

  /// Copies `initial` (max weight must be <= 1) and reseeds from cfg.seed.
  const EnvState& reset(const WeightedGraph& initial);
  /// Same, reseeding from an explicit seed.
  const EnvState& reset(const WeightedGraph& initial, std::uint64_t seed);

  /// Applies one action per agent in index order, then scores the result.
  /// Agents whose turn finds no positive weight leave the graph untouched.
  StepOutcome step(std::span<const double> joint_actions);

  const EnvState& state() const { return state_; }
  const EnvConfig& config() const { return cfg_; }
  std::size_t agent_count() const { return state_.graph.size(); }
  std::size_t observation_size() const { return WeightedGraph::pair_count(agent_count()); }
  std::size_t clamped_action_count() const { return clamped_; }

 private:
  EnvConfig cfg_;
  EnvState state_;
  Rng rng_;
  std::size_t clamped_ = 0;
  bool ready_ = false;
};

}  // namespace groupform
