#include "groupform/maddpg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace groupform {

namespace {

// RNG streams derived from the run seed.
constexpr std::uint64_t kInitStream = 1;
constexpr std::uint64_t kEnvStream = 2;

struct Batch {
  Eigen::MatrixXd states;       // obs x B
  Eigen::MatrixXd actions;      // agents x B
  Eigen::RowVectorXd rewards;   // 1 x B
  Eigen::MatrixXd next_states;  // obs x B
  Eigen::RowVectorXd not_done;  // 1 x B
};

Batch gather(const ReplayMemory& memory, const std::vector<std::size_t>& indices) {
  const auto& first = memory[indices.front()];
  const auto obs = static_cast<Eigen::Index>(first.state.size());
  const auto agents = static_cast<Eigen::Index>(first.actions.size());
  const auto b = static_cast<Eigen::Index>(indices.size());
  Batch out{Eigen::MatrixXd(obs, b), Eigen::MatrixXd(agents, b), Eigen::RowVectorXd(b),
            Eigen::MatrixXd(obs, b), Eigen::RowVectorXd(b)};
  for (Eigen::Index c = 0; c < b; ++c) {
    const Experience& e = memory[indices[static_cast<std::size_t>(c)]];
    out.states.col(c) = Eigen::Map<const Eigen::VectorXd>(e.state.data(), obs);
    out.actions.col(c) = Eigen::Map<const Eigen::VectorXd>(e.actions.data(), agents);
    out.rewards(c) = e.reward;
    out.next_states.col(c) = Eigen::Map<const Eigen::VectorXd>(e.next_state.data(), obs);
    out.not_done(c) = e.done ? 0.0 : 1.0;
  }
  return out;
}

Eigen::MatrixXd stack(const Eigen::MatrixXd& top, const Eigen::MatrixXd& bottom) {
  Eigen::MatrixXd out(top.rows() + bottom.rows(), top.cols());
  out << top, bottom;
  return out;
}

}  // namespace

void TrainConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  require(episodes > 0, "episodes must be positive");
  require(steps_per_episode > 0, "steps_per_episode must be positive");
  require(batch_size > 0, "batch_size must be positive");
  require(capacity > 0, "capacity must be positive");
  require(batch_size <= capacity, "batch_size must not exceed capacity");
  require(gamma >= 0.0 && gamma < 1.0, "gamma must lie in [0, 1)");
  require(soft_tau > 0.0 && soft_tau <= 1.0, "soft_tau must lie in (0, 1]");
  require(lr_actor > 0.0 && lr_critic > 0.0, "learning rates must be positive");
  require(momentum >= 0.0 && momentum < 1.0, "momentum must lie in [0, 1)");
  require(hidden1 > 0 && hidden2 > 0, "hidden sizes must be positive");
  require(ou_theta >= 0.0 && ou_sigma >= 0.0, "OU theta and sigma must be non-negative");
  require(sigma_decay > 0.0 && sigma_decay <= 1.0, "sigma_decay must lie in (0, 1]");
}

bool Agent::all_finite() const {
  return actor.all_finite() && critic.all_finite() && target_actor.all_finite() &&
         target_critic.all_finite();
}

std::vector<Agent> make_agents(std::size_t agent_count, std::size_t observation_size,
                               const TrainConfig& cfg, Rng& rng) {
  std::vector<Agent> agents;
  agents.reserve(agent_count);
  for (std::size_t k = 0; k < agent_count; ++k) {
    Agent a;
    a.actor = DenseNet({observation_size, cfg.hidden1, cfg.hidden2, 1}, Activation::relu,
                       Activation::tanh);
    a.critic = DenseNet({observation_size + agent_count, cfg.hidden1, cfg.hidden2, 1},
                        Activation::relu, Activation::identity);
    a.actor.initialize(rng);
    a.critic.initialize(rng);
    a.target_actor = a.actor;
    a.target_critic = a.critic;
    a.noise = OuNoise(cfg.ou_mu, cfg.ou_theta, cfg.ou_sigma);
    a.actor_optimizer = SgdOptimizer(cfg.lr_actor, cfg.momentum);
    a.critic_optimizer = SgdOptimizer(cfg.lr_critic, cfg.momentum);
    agents.push_back(std::move(a));
  }
  return agents;
}

std::vector<LossReport> learn_step(std::vector<Agent>& agents, const ReplayMemory& memory,
                                   const TrainConfig& cfg, Rng& rng) {
  if (memory.size() < std::max(cfg.batch_size, cfg.warmup)) {
    throw std::length_error("buffer underfilled");
  }
  const Batch batch = gather(memory, memory.sample_indices(cfg.batch_size, rng));
  const auto b = static_cast<double>(cfg.batch_size);
  const auto obs = batch.states.rows();

  // Joint next actions from the target actors; fixed for this step.
  Eigen::MatrixXd next_actions(static_cast<Eigen::Index>(agents.size()), batch.states.cols());
  for (std::size_t k = 0; k < agents.size(); ++k) {
    next_actions.row(static_cast<Eigen::Index>(k)) = agents[k].target_actor.forward(batch.next_states);
  }
  const Eigen::MatrixXd critic_in = stack(batch.states, batch.actions);
  const Eigen::MatrixXd next_critic_in = stack(batch.next_states, next_actions);

  std::vector<LossReport> reports(agents.size());
  for (std::size_t k = 0; k < agents.size(); ++k) {
    Agent& agent = agents[k];

    // Critic: regress Q(s, a) onto r + gamma * (1 - done) * Q'(s', mu'(s')).
    const Eigen::RowVectorXd next_q = agent.target_critic.forward(next_critic_in);
    const Eigen::RowVectorXd y =
        batch.rewards + cfg.gamma * batch.not_done.cwiseProduct(next_q);
    const Eigen::RowVectorXd q = agent.critic.forward(critic_in);
    const Eigen::RowVectorXd td = q - y;
    reports[k].critic_loss = td.squaredNorm() / b;
    agent.critic_optimizer.step(agent.critic, agent.critic.backward((2.0 / b) * td));

    // Actor: ascend Q w.r.t. this agent's own action, others held at the batch.
    const Eigen::RowVectorXd own = agent.actor.forward(batch.states);
    Eigen::MatrixXd policy_in = critic_in;
    policy_in.row(obs + static_cast<Eigen::Index>(k)) = own;
    const Eigen::RowVectorXd policy_q = agent.critic.forward(policy_in);
    reports[k].actor_objective = policy_q.mean();
    const NetGradients dq =
        agent.critic.backward(Eigen::RowVectorXd::Constant(policy_q.size(), 1.0 / b));
    const Eigen::RowVectorXd dq_da = dq.input.row(obs + static_cast<Eigen::Index>(k));
    agent.actor_optimizer.step(agent.actor, agent.actor.backward(-dq_da));
  }

  for (Agent& agent : agents) {
    soft_update(agent.target_actor, agent.actor, cfg.soft_tau);
    soft_update(agent.target_critic, agent.critic, cfg.soft_tau);
  }
  return reports;
}

// ---------------------------------------------------------------------------

namespace {

EnvConfig episode_env_config(EnvConfig env, const TrainConfig& train) {
  env.max_steps = train.steps_per_episode;
  return env;
}

}  // namespace

MaddpgTrainer::MaddpgTrainer(const WeightedGraph& initial_graph, EnvConfig env_cfg,
                             TrainConfig train_cfg)
    : initial_(initial_graph),
      cfg_(train_cfg),
      env_(episode_env_config(env_cfg, train_cfg)),
      rng_(train_cfg.seed),
      memory_(train_cfg.capacity),
      carried_(initial_graph) {
  cfg_.validate();
  env_.reset(initial_, mix_seed(cfg_.seed, kEnvStream));
  Rng init_rng(mix_seed(cfg_.seed, kInitStream));
  agents_ = make_agents(env_.agent_count(), env_.observation_size(), cfg_, init_rng);
}

std::vector<double> MaddpgTrainer::policy_actions(const std::vector<double>& observation) const {
  const Eigen::Map<const Eigen::VectorXd> obs(observation.data(),
                                              static_cast<Eigen::Index>(observation.size()));
  std::vector<double> actions(agents_.size());
  for (std::size_t k = 0; k < agents_.size(); ++k) {
    actions[k] = agents_[k].actor.evaluate(obs)(0);
  }
  return actions;
}

EpisodeScore MaddpgTrainer::run_episode() {
  const std::size_t episode = episodes_done_;
  const WeightedGraph& start =
      cfg_.episode_start == EpisodeStart::carry ? carried_ : initial_;
  env_.reset(start, mix_seed(cfg_.seed, kEnvStream + 1 + episode));
  for (Agent& a : agents_) a.noise.reset();

  EpisodeScore result;
  result.episode = episode;
  std::vector<double> observation = env_.state().observation();
  const std::size_t ready = std::max(cfg_.batch_size, cfg_.warmup);
  for (std::size_t t = 0; t < cfg_.steps_per_episode; ++t) {
    std::vector<double> actions = policy_actions(observation);
    for (std::size_t k = 0; k < actions.size(); ++k) {
      actions[k] = std::clamp(actions[k] + agents_[k].noise.sample(rng_), -1.0, 1.0);
    }
    StepOutcome outcome = env_.step(actions);
    std::vector<double> next_observation = outcome.next_state.observation();
    memory_.push({observation, actions, outcome.reward, next_observation, outcome.done});
    result.score += outcome.reward;
    result.final_breakdown = outcome.breakdown;
    observation = std::move(next_observation);

    if (memory_.size() >= ready) {
      learn_step(agents_, memory_, cfg_, rng_);
      ++learn_steps_;
      for (std::size_t k = 0; k < agents_.size(); ++k) {
        if (!agents_[k].all_finite()) {
          throw std::runtime_error("non-finite parameters in agent " + std::to_string(k) +
                                   " at episode " + std::to_string(episode));
        }
      }
    }
    if (outcome.done) break;
  }
  if (!std::isfinite(result.score)) {
    throw std::runtime_error("non-finite score at episode " + std::to_string(episode));
  }

  for (Agent& a : agents_) a.noise.set_sigma(a.noise.sigma() * cfg_.sigma_decay);
  carried_ = env_.state().graph;
  scores_.push_back(result);
  ++episodes_done_;
  return result;
}

void MaddpgTrainer::train(const std::function<void(const EpisodeScore&)>& on_episode) {
  while (episodes_done_ < cfg_.episodes) {
    const EpisodeScore s = run_episode();
    if (on_episode) on_episode(s);
  }
}

MaddpgTrainer train(const WeightedGraph& initial_graph, const EnvConfig& env_cfg,
                    const TrainConfig& train_cfg) {
  MaddpgTrainer trainer(initial_graph, env_cfg, train_cfg);
  trainer.train();
  return trainer;
}

TrendSummary score_trend(const std::vector<EpisodeScore>& scores) {
  if (scores.empty()) throw std::invalid_argument("no scores");
  const std::size_t window = std::max<std::size_t>(1, (scores.size() + 9) / 10);
  TrendSummary t;
  for (std::size_t i = 0; i < window; ++i) {
    t.first_decile_mean += scores[i].score;
    t.last_decile_mean += scores[scores.size() - 1 - i].score;
  }
  t.first_decile_mean /= static_cast<double>(window);
  t.last_decile_mean /= static_cast<double>(window);
  return t;
}

}  // namespace groupform
