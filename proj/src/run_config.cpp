#include "groupform/run_config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "groupform/io.hpp"

namespace groupform {

namespace {

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
    throw std::invalid_argument("config key '" + key + "': '" + v + "' is not a number");
  }
  return out;
}

template <typename T>
T to_unsigned(const std::string& key, const std::string& v) {
  T out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
    throw std::invalid_argument("config key '" + key + "': '" + v +
                                "' is not a non-negative integer");
  }
  return out;
}

std::size_t to_size(const std::string& key, const std::string& v) {
  return to_unsigned<std::size_t>(key, v);
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  using Setter = std::function<void(RunConfig&, const std::string&)>;
  static const std::map<std::string, Setter> setters = {
      {"records", [](RunConfig& c, const std::string& v) { c.records = v; }},
      {"graph", [](RunConfig& c, const std::string& v) { c.graph = v; }},
      {"output_dir", [](RunConfig& c, const std::string& v) { c.output_dir = v; }},
      {"seed",
       [](RunConfig& c, const std::string& v) {
         const auto s = to_unsigned<std::uint64_t>("seed", v);
         c.env.seed = c.train.seed = c.cluster.seed = s;
       }},
      {"reward_oc", [](RunConfig& c, const std::string& v) { c.env.reward_weights.oc = to_double("reward_oc", v); }},
      {"reward_var", [](RunConfig& c, const std::string& v) { c.env.reward_weights.var = to_double("reward_var", v); }},
      {"reward_pl", [](RunConfig& c, const std::string& v) { c.env.reward_weights.pl = to_double("reward_pl", v); }},
      {"reward_pd", [](RunConfig& c, const std::string& v) { c.env.reward_weights.pd = to_double("reward_pd", v); }},
      {"step_size", [](RunConfig& c, const std::string& v) { c.env.step_size = to_double("step_size", v); }},
      {"prune_threshold",
       [](RunConfig& c, const std::string& v) { c.env.prune_threshold = to_double("prune_threshold", v); }},
      {"degree_mode",
       [](RunConfig& c, const std::string& v) {
         if (v == "weighted") c.env.degree_mode = DegreeMode::weighted;
         else if (v == "binary") c.env.degree_mode = DegreeMode::binary;
         else throw std::invalid_argument("degree_mode must be weighted or binary");
       }},
      {"mutation",
       [](RunConfig& c, const std::string& v) {
         if (v == "signed") c.env.mutation = MutationRule::signed_step;
         else if (v == "additive") c.env.mutation = MutationRule::additive;
         else throw std::invalid_argument("mutation must be signed or additive");
       }},
      {"episodes", [](RunConfig& c, const std::string& v) { c.train.episodes = to_size("episodes", v); }},
      {"steps_per_episode",
       [](RunConfig& c, const std::string& v) {
         c.train.steps_per_episode = to_size("steps_per_episode", v);
         c.env.max_steps = c.train.steps_per_episode;
       }},
      {"batch_size", [](RunConfig& c, const std::string& v) { c.train.batch_size = to_size("batch_size", v); }},
      {"capacity", [](RunConfig& c, const std::string& v) { c.train.capacity = to_size("capacity", v); }},
      {"gamma", [](RunConfig& c, const std::string& v) { c.train.gamma = to_double("gamma", v); }},
      {"soft_tau", [](RunConfig& c, const std::string& v) { c.train.soft_tau = to_double("soft_tau", v); }},
      {"lr_actor", [](RunConfig& c, const std::string& v) { c.train.lr_actor = to_double("lr_actor", v); }},
      {"lr_critic", [](RunConfig& c, const std::string& v) { c.train.lr_critic = to_double("lr_critic", v); }},
      {"momentum", [](RunConfig& c, const std::string& v) { c.train.momentum = to_double("momentum", v); }},
      {"hidden1", [](RunConfig& c, const std::string& v) { c.train.hidden1 = to_size("hidden1", v); }},
      {"hidden2", [](RunConfig& c, const std::string& v) { c.train.hidden2 = to_size("hidden2", v); }},
      {"warmup", [](RunConfig& c, const std::string& v) { c.train.warmup = to_size("warmup", v); }},
      {"ou_mu", [](RunConfig& c, const std::string& v) { c.train.ou_mu = to_double("ou_mu", v); }},
      {"ou_theta", [](RunConfig& c, const std::string& v) { c.train.ou_theta = to_double("ou_theta", v); }},
      {"ou_sigma", [](RunConfig& c, const std::string& v) { c.train.ou_sigma = to_double("ou_sigma", v); }},
      {"sigma_decay", [](RunConfig& c, const std::string& v) { c.train.sigma_decay = to_double("sigma_decay", v); }},
      {"episode_start",
       [](RunConfig& c, const std::string& v) {
         if (v == "initial") c.train.episode_start = EpisodeStart::initial;
         else if (v == "carry") c.train.episode_start = EpisodeStart::carry;
         else throw std::invalid_argument("episode_start must be initial or carry");
       }},
      {"k", [](RunConfig& c, const std::string& v) { c.cluster.k = to_size("k", v); }},
      {"cap", [](RunConfig& c, const std::string& v) { c.cap = to_size("cap", v); }},
      {"strategy",
       [](RunConfig& c, const std::string& v) {
         if (v == "occupancy") c.cluster.strategy = ClusterStrategy::occupancy;
         else if (v == "weight_greedy") c.cluster.strategy = ClusterStrategy::weight_greedy;
         else throw std::invalid_argument("strategy must be occupancy or weight_greedy");
       }},
  };
  auto it = setters.find(key);
  if (it == setters.end()) throw std::invalid_argument("unknown config key '" + key + "'");
  it->second(*this, value);
}

void RunConfig::load(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(source + ":" + std::to_string(line_no) + ": expected key = value");
    }
    try {
      set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw ParseError(source + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  load(in, path);
}

std::map<std::string, std::string> RunConfig::values() const {
  std::map<std::string, std::string> out;
  const auto& w = env.reward_weights;
  out["records"] = records;
  out["graph"] = graph;
  out["output_dir"] = output_dir;
  out["seed"] = std::to_string(train.seed);
  out["reward_oc"] = format_double(w.oc);
  out["reward_var"] = format_double(w.var);
  out["reward_pl"] = format_double(w.pl);
  out["reward_pd"] = format_double(w.pd);
  out["step_size"] = format_double(env.step_size);
  out["prune_threshold"] = format_double(env.prune_threshold);
  out["degree_mode"] = env.degree_mode == DegreeMode::binary ? "binary" : "weighted";
  out["mutation"] = env.mutation == MutationRule::additive ? "additive" : "signed";
  out["episodes"] = std::to_string(train.episodes);
  out["steps_per_episode"] = std::to_string(train.steps_per_episode);
  out["batch_size"] = std::to_string(train.batch_size);
  out["capacity"] = std::to_string(train.capacity);
  out["gamma"] = format_double(train.gamma);
  out["soft_tau"] = format_double(train.soft_tau);
  out["lr_actor"] = format_double(train.lr_actor);
  out["lr_critic"] = format_double(train.lr_critic);
  out["momentum"] = format_double(train.momentum);
  out["hidden1"] = std::to_string(train.hidden1);
  out["hidden2"] = std::to_string(train.hidden2);
  out["warmup"] = std::to_string(train.warmup);
  out["ou_mu"] = format_double(train.ou_mu);
  out["ou_theta"] = format_double(train.ou_theta);
  out["ou_sigma"] = format_double(train.ou_sigma);
  out["sigma_decay"] = format_double(train.sigma_decay);
  out["episode_start"] = train.episode_start == EpisodeStart::carry ? "carry" : "initial";
  out["k"] = std::to_string(cluster.k);
  out["cap"] = std::to_string(cap);
  out["strategy"] = cluster.strategy == ClusterStrategy::weight_greedy ? "weight_greedy" : "occupancy";
  return out;
}

void RunConfig::echo(std::ostream& out) const {
  for (const auto& [key, value] : values()) out << key << " = " << value << '\n';
}

void RunConfig::validate() const {
  env.validate();
  train.validate();
  if (cluster.k == 0) throw std::invalid_argument("k must be positive");
}

ClusterConfig RunConfig::cluster_for(std::size_t n) const {
  ClusterConfig c = cluster;
  c.cap = cap == 0 ? ClusterConfig::default_cap(n, c.k) : cap;
  return c;
}

}  // namespace groupform
