#pragma once
// Multi-agent deep deterministic policy gradient.
//
// Every participant is an agent with its own actor and a centralized critic
// that sees the global observation concatenated with all agents' actions.
// Agents share one replay memory of joint transitions and one scalar reward.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "groupform/dense_net.hpp"
#include "groupform/environment.hpp"
#include "groupform/ou_noise.hpp"
#include "groupform/replay_memory.hpp"

namespace groupform {

/// Where each episode's graph starts from.
enum class EpisodeStart {
  initial,  // the graph the run started with
  carry,    // wherever the previous episode left it
};

struct TrainConfig {
  std::size_t episodes = 300;
  std::size_t steps_per_episode = 20;
  std::size_t batch_size = 64;
  std::size_t capacity = 100000;
  double gamma = 0.99;
  double soft_tau = 0.01;
  double lr_actor = 3e-3;
  double lr_critic = 1e-3;
  double momentum = 0.0;
  std::size_t hidden1 = 64;
  std::size_t hidden2 = 64;
  std::uint64_t seed = 42;
  std::size_t warmup = 500;
  double ou_mu = 0.0;
  double ou_theta = 0.15;
  double ou_sigma = 0.2;
  double sigma_decay = 0.995;
  EpisodeStart episode_start = EpisodeStart::initial;

  void validate() const;
};

struct Agent {
  DenseNet actor;
  DenseNet critic;
  DenseNet target_actor;
  DenseNet target_critic;
  OuNoise noise;
  SgdOptimizer actor_optimizer;
  SgdOptimizer critic_optimizer;

  bool all_finite() const;
};

/// Actors map obs -> 1 action (tanh head); critics map obs ++ joint actions
/// -> Q (identity head). Targets start as exact copies.
std::vector<Agent> make_agents(std::size_t agent_count, std::size_t observation_size,
                               const TrainConfig& cfg, Rng& rng);

struct LossReport {
  double critic_loss = 0.0;     // mean squared TD error before the update
  double actor_objective = 0.0;  // mean Q of the agent's current policy
};

/// One gradient update for every agent on a shared minibatch, followed by
/// soft target updates. Throws std::length_error("buffer underfilled") when
/// the memory holds fewer than max(batch_size, warmup) experiences.
std::vector<LossReport> learn_step(std::vector<Agent>& agents, const ReplayMemory& memory,
                                   const TrainConfig& cfg, Rng& rng);

struct EpisodeScore {
  std::size_t episode = 0;
  double score = 0.0;  // summed reward over the episode
  RewardBreakdown final_breakdown;
};

/// Owns the environment, agents, memory and RNG of one training run.
class MaddpgTrainer {
 public:
  MaddpgTrainer(const WeightedGraph& initial_graph, EnvConfig env_cfg, TrainConfig train_cfg);

  /// Runs one episode and returns its score. Throws std::runtime_error if any
  /// parameter stops being finite.
  EpisodeScore run_episode();

  /// Runs episodes until cfg.episodes have completed; `on_episode` sees each score.
  void train(const std::function<void(const EpisodeScore&)>& on_episode = {});

  const std::vector<EpisodeScore>& scores() const { return scores_; }
  const WeightedGraph& initial_graph() const { return initial_; }
  const WeightedGraph& current_graph() const { return env_.state().graph; }
  const std::vector<Agent>& agents() const { return agents_; }
  std::vector<Agent>& agents() { return agents_; }
  const ReplayMemory& memory() const { return memory_; }
  const EnvConfig& env_config() const { return env_.config(); }
  const TrainConfig& train_config() const { return cfg_; }
  std::size_t learn_steps() const { return learn_steps_; }
  /// Episodes run so far, including those restored from a checkpoint.
  std::size_t episodes_completed() const { return episodes_done_; }
  void set_episodes_completed(std::size_t n) { episodes_done_ = n; }
  std::size_t clamped_action_count() const { return env_.clamped_action_count(); }

  Rng& rng() { return rng_; }
  const Rng& rng() const { return rng_; }

  /// Deterministic action (no noise) for the current state.
  std::vector<double> policy_actions(const std::vector<double>& observation) const;

 private:
  WeightedGraph initial_;
  TrainConfig cfg_;
  GraphEnvironment env_;
  Rng rng_;
  std::vector<Agent> agents_;
  ReplayMemory memory_;
  std::vector<EpisodeScore> scores_;
  WeightedGraph carried_;
  std::size_t learn_steps_ = 0;
  std::size_t episodes_done_ = 0;
};

/// Convenience wrapper: trains from scratch and returns the trainer.
MaddpgTrainer train(const WeightedGraph& initial_graph, const EnvConfig& env_cfg,
                    const TrainConfig& train_cfg);

/// Mean of the first and last ceil(10%) episode scores.
struct TrendSummary {
  double first_decile_mean = 0.0;
  double last_decile_mean = 0.0;
};
TrendSummary score_trend(const std::vector<EpisodeScore>& scores);

}  // namespace groupform
