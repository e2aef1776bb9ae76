#include "groupform/environment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace groupform {

void EnvConfig::validate() const {
  const auto& w = reward_weights;
  for (double lambda : {w.oc, w.var, w.pl, w.pd}) {
    if (!std::isfinite(lambda) || lambda < 0.0) {
      throw std::invalid_argument("reward weights must be finite and non-negative");
    }
  }
  if (w.oc == 0.0 && w.var == 0.0 && w.pl == 0.0 && w.pd == 0.0) {
    throw std::invalid_argument("at least one reward weight must be positive");
  }
  if (!(step_size > 0.0 && step_size <= 1.0)) {
    throw std::invalid_argument("step_size must lie in (0, 1]");
  }
  if (!(prune_threshold >= 0.0 && prune_threshold < 1.0)) {
    throw std::invalid_argument("prune_threshold must lie in [0, 1)");
  }
  if (max_steps == 0) throw std::invalid_argument("max_steps must be positive");
}

double normalize_action(double alpha, std::size_t& clamp_count) {
  if (std::isnan(alpha)) throw std::invalid_argument("action is NaN");
  if (alpha < -1.0 || alpha > 1.0) {
    ++clamp_count;
    alpha = std::clamp(alpha, -1.0, 1.0);
  }
  return (alpha + 1.0) / 2.0;
}

double normalize_action(double alpha) {
  std::size_t ignored = 0;
  return normalize_action(alpha, ignored);
}

std::pair<std::size_t, std::size_t> select_edge(const WeightedGraph& g, double a_prime,
                                                Rng& rng) {
  const std::size_t n = g.size();
  const bool uniform = !(a_prime > 0.0);

  // Score of a pair: w * a' as written, or 1 for positive pairs when a' == 0.
  auto score = [&](std::size_t i, std::size_t j) {
    const double w = g.weight(i, j);
    if (!(w > 0.0)) return 0.0;
    return uniform ? 1.0 : w * a_prime;
  };

  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) total += score(i, j);
  }
  if (!(total > 0.0)) throw std::domain_error("no selectable edge");

  const double target = uniform01(rng) * total;
  double cumulative = 0.0;
  std::pair<std::size_t, std::size_t> last{0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = score(i, j);
      if (s == 0.0) continue;
      cumulative += s;
      last = {i, j};
      if (target < cumulative) return last;
    }
  }
  return last;  // rounding left target at the very top
}

EdgeChange apply_action(WeightedGraph& g, double alpha, const EnvConfig& cfg, Rng& rng,
                        std::size_t& clamp_count) {
  const double a_prime = normalize_action(alpha, clamp_count);
  const double clamped_alpha = 2.0 * a_prime - 1.0;
  const auto [i, j] = select_edge(g, a_prime, rng);
  const double old_weight = g.weight(i, j);
  const double delta =
      cfg.mutation == MutationRule::signed_step ? cfg.step_size * clamped_alpha : a_prime;
  const double new_weight = std::clamp(old_weight + delta, 0.0, 1.0);
  g.set_weight(i, j, new_weight);
  return {i, j, old_weight, new_weight};
}

RewardBreakdown composite_reward(const WeightedGraph& g, const EnvConfig& cfg) {
  const auto n = static_cast<double>(g.size());
  RewardBreakdown b;
  b.oc = overall_connectivity(g);
  b.var = degree_variance(g, cfg.degree_mode, cfg.prune_threshold);
  b.pl = average_path_length(g, cfg.prune_threshold);
  b.pd = dominance_penalty(g, cfg.degree_mode, cfg.prune_threshold);
  const auto& w = cfg.reward_weights;
  b.composite = w.oc * b.oc - w.var * b.var - w.pl * (b.pl / n) - w.pd * (b.pd / (n - 1.0));
  return b;
}

GraphEnvironment::GraphEnvironment(EnvConfig cfg) : cfg_(cfg), rng_(cfg.seed) {
  cfg_.validate();
}

const EnvState& GraphEnvironment::reset(const WeightedGraph& initial) {
  return reset(initial, cfg_.seed);
}

const EnvState& GraphEnvironment::reset(const WeightedGraph& initial, std::uint64_t seed) {
  if (initial.size() < 2) throw std::invalid_argument("environment needs at least two nodes");
  if (initial.max_weight() > 1.0) {
    throw std::invalid_argument("initial graph is not normalized (max weight > 1)");
  }
  state_ = EnvState{initial, 0};
  rng_.seed(seed);
  ready_ = true;
  return state_;
}

StepOutcome GraphEnvironment::step(std::span<const double> joint_actions) {
  if (!ready_) throw std::logic_error("step called before reset");
  if (joint_actions.size() != agent_count()) {
    throw std::invalid_argument("expected " + std::to_string(agent_count()) +
                                " actions, got " + std::to_string(joint_actions.size()));
  }
  StepOutcome out;
  out.modified_edges.reserve(joint_actions.size());
  for (double alpha : joint_actions) {
    if (!state_.graph.has_positive_weight()) break;
    out.modified_edges.push_back(apply_action(state_.graph, alpha, cfg_, rng_, clamped_));
  }
  ++state_.step;
  out.breakdown = composite_reward(state_.graph, cfg_);
  out.reward = out.breakdown.composite;
  out.done = state_.step >= cfg_.max_steps;
  out.next_state = state_;
  return out;
}

}  // namespace groupform
