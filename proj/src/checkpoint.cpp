#include "groupform/checkpoint.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "groupform/io.hpp"

namespace groupform {

namespace {

std::string hex_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::hex);
  return std::string(buf, ptr);
}

double read_hex_double(const std::string& token) {
  double v = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  bool negative = false;
  if (begin != end && *begin == '-') {
    negative = true;
    ++begin;
  }
  auto [ptr, ec] = std::from_chars(begin, end, v, std::chars_format::hex);
  if (ec != std::errc() || ptr != end) {
    throw std::runtime_error("checkpoint: bad number '" + token + "'");
  }
  return negative ? -v : v;
}

void expect(std::istream& in, const std::string& word) {
  std::string token;
  if (!(in >> token) || token != word) {
    throw std::runtime_error("checkpoint: expected '" + word + "', found '" + token + "'");
  }
}

template <typename T>
T read_value(std::istream& in, const char* what) {
  T value{};
  if (!(in >> value)) throw std::runtime_error(std::string("checkpoint: cannot read ") + what);
  return value;
}

double read_double(std::istream& in) { return read_hex_double(read_value<std::string>(in, "number")); }

const char* activation_name(Activation a) {
  switch (a) {
    case Activation::relu: return "relu";
    case Activation::tanh: return "tanh";
    case Activation::identity: break;
  }
  return "identity";
}

void save_net(std::ostream& out, const char* role, const DenseNet& net) {
  out << "net " << role << ' ' << activation_name(net.hidden_activation()) << ' '
      << activation_name(net.head_activation());
  for (std::size_t s : net.layer_sizes()) out << ' ' << s;
  out << '\n';
  for (const auto& layer : net.layers()) {
    out << "weight";
    for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) {
      for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) out << ' ' << hex_double(layer.weight(r, c));
    }
    out << "\nbias";
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) out << ' ' << hex_double(layer.bias(r));
    out << '\n';
  }
}

void load_net(std::istream& in, const char* role, DenseNet& net) {
  expect(in, "net");
  expect(in, role);
  expect(in, activation_name(net.hidden_activation()));
  expect(in, activation_name(net.head_activation()));
  for (std::size_t s : net.layer_sizes()) {
    if (read_value<std::size_t>(in, "layer size") != s) {
      throw std::runtime_error(std::string("checkpoint: shape mismatch in ") + role);
    }
  }
  for (auto& layer : net.layers()) {
    expect(in, "weight");
    for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) {
      for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) layer.weight(r, c) = read_double(in);
    }
    expect(in, "bias");
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) layer.bias(r) = read_double(in);
  }
  net.clear_cache();
}

const char* name_of(DegreeMode m) { return m == DegreeMode::binary ? "binary" : "weighted"; }
const char* name_of(MutationRule m) { return m == MutationRule::additive ? "additive" : "signed"; }
const char* name_of(EpisodeStart s) { return s == EpisodeStart::carry ? "carry" : "initial"; }

}  // namespace

std::string canonical_config(const EnvConfig& env, const TrainConfig& t) {
  std::ostringstream out;
  const auto& w = env.reward_weights;
  out << "reward_oc=" << format_double(w.oc) << "\nreward_var=" << format_double(w.var)
      << "\nreward_pl=" << format_double(w.pl) << "\nreward_pd=" << format_double(w.pd)
      << "\nstep_size=" << format_double(env.step_size)
      << "\nprune_threshold=" << format_double(env.prune_threshold)
      << "\ndegree_mode=" << name_of(env.degree_mode) << "\nmutation=" << name_of(env.mutation)
      << "\nepisodes=" << t.episodes << "\nsteps_per_episode=" << t.steps_per_episode
      << "\nbatch_size=" << t.batch_size << "\ncapacity=" << t.capacity
      << "\ngamma=" << format_double(t.gamma) << "\nsoft_tau=" << format_double(t.soft_tau)
      << "\nlr_actor=" << format_double(t.lr_actor) << "\nlr_critic=" << format_double(t.lr_critic)
      << "\nmomentum=" << format_double(t.momentum) << "\nhidden1=" << t.hidden1
      << "\nhidden2=" << t.hidden2 << "\nseed=" << t.seed << "\nwarmup=" << t.warmup
      << "\nou_mu=" << format_double(t.ou_mu) << "\nou_theta=" << format_double(t.ou_theta)
      << "\nou_sigma=" << format_double(t.ou_sigma)
      << "\nsigma_decay=" << format_double(t.sigma_decay)
      << "\nepisode_start=" << name_of(t.episode_start) << '\n';
  return out.str();
}

std::uint64_t config_hash(const EnvConfig& env, const TrainConfig& train) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_config(env, train)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void save_checkpoint(std::ostream& out, const MaddpgTrainer& trainer) {
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(
                    config_hash(trainer.env_config(), trainer.train_config())));
  out << "groupform-checkpoint " << kCheckpointVersion << '\n'
      << "config-hash " << hash << '\n'
      << "episodes " << trainer.episodes_completed() << '\n'
      << "rng " << trainer.rng() << '\n'
      << "agents " << trainer.agents().size() << '\n';
  for (std::size_t k = 0; k < trainer.agents().size(); ++k) {
    const Agent& a = trainer.agents()[k];
    out << "agent " << k << '\n'
        << "noise " << hex_double(a.noise.mu()) << ' ' << hex_double(a.noise.theta()) << ' '
        << hex_double(a.noise.sigma()) << ' ' << hex_double(a.noise.value()) << '\n';
    save_net(out, "actor", a.actor);
    save_net(out, "critic", a.critic);
    save_net(out, "target_actor", a.target_actor);
    save_net(out, "target_critic", a.target_critic);
  }
  out << "end\n";
}

void load_checkpoint(std::istream& in, MaddpgTrainer& trainer) {
  expect(in, "groupform-checkpoint");
  if (read_value<int>(in, "version") != kCheckpointVersion) {
    throw std::runtime_error("checkpoint: unsupported version");
  }
  expect(in, "config-hash");
  const std::string hash = read_value<std::string>(in, "hash");
  char expected[17];
  std::snprintf(expected, sizeof expected, "%016llx",
                static_cast<unsigned long long>(
                    config_hash(trainer.env_config(), trainer.train_config())));
  if (hash != expected) throw std::runtime_error("checkpoint: configuration hash mismatch");
  expect(in, "episodes");
  const auto episodes = read_value<std::size_t>(in, "episode count");
  expect(in, "rng");
  Rng rng;
  if (!(in >> rng)) throw std::runtime_error("checkpoint: cannot read rng state");
  expect(in, "agents");
  if (read_value<std::size_t>(in, "agent count") != trainer.agents().size()) {
    throw std::runtime_error("checkpoint: agent count mismatch");
  }
  std::vector<Agent> agents = trainer.agents();
  for (std::size_t k = 0; k < agents.size(); ++k) {
    expect(in, "agent");
    if (read_value<std::size_t>(in, "agent index") != k) {
      throw std::runtime_error("checkpoint: agents out of order");
    }
    expect(in, "noise");
    const double mu = read_double(in);
    const double theta = read_double(in);
    const double sigma = read_double(in);
    const double x = read_double(in);
    agents[k].noise = OuNoise(mu, theta, sigma);
    agents[k].noise.set_value(x);
    load_net(in, "actor", agents[k].actor);
    load_net(in, "critic", agents[k].critic);
    load_net(in, "target_actor", agents[k].target_actor);
    load_net(in, "target_critic", agents[k].target_critic);
  }
  expect(in, "end");
  trainer.agents() = std::move(agents);
  trainer.rng() = rng;
  trainer.set_episodes_completed(episodes);
}

}  // namespace groupform
