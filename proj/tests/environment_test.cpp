#include <gtest/gtest.h>

#include <map>

#include "groupform/environment.hpp"
#include "oracles.hpp"

using namespace groupform;

namespace {

WeightedGraph complete(std::size_t n, double w) {
  WeightedGraph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) g.set_weight(i, j, w);
  }
  return g;
}

WeightedGraph random_graph(std::size_t n, Rng& rng) {
  WeightedGraph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) g.set_weight(i, j, uniform01(rng));
  }
  return g;
}

}  // namespace

TEST(Reset, SameSeedSameObservation) {
  Rng rng(1);
  const auto g = random_graph(4, rng);
  EnvConfig cfg;
  cfg.seed = 9;
  GraphEnvironment a(cfg);
  GraphEnvironment b(cfg);
  EXPECT_EQ(a.reset(g).observation(), b.reset(g).observation());
  EXPECT_EQ(a.state().observation().size(), 6u);
  EXPECT_EQ(a.state().step, 0u);
  EXPECT_EQ(a.observation_size(), 6u);
}

TEST(Reset, RejectsUnnormalizedGraph) {
  WeightedGraph g(3);
  g.set_weight(0, 1, 2.0);
  GraphEnvironment env(EnvConfig{});
  EXPECT_THROW(env.reset(g), std::invalid_argument);
}

TEST(NormalizeAction, MapsAndClamps) {
  EXPECT_EQ(normalize_action(-1.0), 0.0);
  EXPECT_EQ(normalize_action(0.0), 0.5);
  EXPECT_EQ(normalize_action(1.0), 1.0);
  std::size_t clamped = 0;
  EXPECT_EQ(normalize_action(3.0, clamped), 1.0);
  EXPECT_EQ(normalize_action(-2.0, clamped), 0.0);
  EXPECT_EQ(clamped, 2u);
  EXPECT_THROW(normalize_action(std::nan("")), std::invalid_argument);
}

TEST(SelectEdge, TwoEdgeProbabilities) {
  WeightedGraph g(3);
  g.set_weight(0, 1, 1);
  g.set_weight(0, 2, 3);
  Rng rng(2);
  const int draws = 100000;
  int first = 0;
  for (int k = 0; k < draws; ++k) {
    const auto [i, j] = select_edge(g, 0.7, rng);
    ASSERT_EQ(i, 0u);
    if (j == 1) ++first;
  }
  EXPECT_NEAR(first / static_cast<double>(draws), 0.25, 0.01);
}

TEST(SelectEdge, SinglePositiveEdgeAlwaysChosen) {
  WeightedGraph g(4);
  g.set_weight(1, 3, 0.2);
  Rng rng(3);
  for (double a : {0.0, 0.3, 1.0}) {
    for (int k = 0; k < 100; ++k) EXPECT_EQ(select_edge(g, a, rng), (std::pair<std::size_t, std::size_t>{1, 3}));
  }
}

TEST(SelectEdge, ZeroActionFallsBackToUniform) {
  WeightedGraph g(3);
  g.set_weight(0, 1, 0.1);
  g.set_weight(1, 2, 0.9);
  Rng rng(4);
  int low = 0;
  for (int k = 0; k < 20000; ++k) low += select_edge(g, 0.0, rng).second == 1;
  EXPECT_NEAR(low / 20000.0, 0.5, 0.02);
}

TEST(SelectEdge, EmptyGraphHasNoSelectableEdge) {
  Rng rng(5);
  try {
    select_edge(WeightedGraph(3), 0.5, rng);
    FAIL();
  } catch (const std::domain_error& e) {
    EXPECT_STREQ(e.what(), "no selectable edge");
  }
}

TEST(SelectEdge, FrequenciesMatchWeights) {
  Rng rng(6);
  const auto g = random_graph(5, rng);
  const double total = g.total_weight();
  std::map<std::pair<std::size_t, std::size_t>, int> counts;
  const int draws = 100000;
  for (int k = 0; k < draws; ++k) ++counts[select_edge(g, 0.5, rng)];
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = i + 1; j < 5; ++j) {
      const double freq = counts[{i, j}] / static_cast<double>(draws);
      EXPECT_NEAR(freq, g.weight(i, j) / total, 0.01);
    }
  }
}

TEST(ApplyAction, SignedStepExamples) {
  EnvConfig cfg;
  Rng rng(7);
  std::size_t clamped = 0;
  WeightedGraph g(2);

  g.set_weight(0, 1, 0.5);
  auto change = apply_action(g, 0.0, cfg, rng, clamped);
  EXPECT_EQ(change.new_weight, 0.5);

  g.set_weight(0, 1, 0.95);
  apply_action(g, 1.0, cfg, rng, clamped);
  EXPECT_EQ(g.weight(0, 1), 1.0);

  g.set_weight(0, 1, 0.05);
  change = apply_action(g, -1.0, cfg, rng, clamped);
  EXPECT_EQ(g.weight(0, 1), 0.0);
  EXPECT_EQ(g.weight(1, 0), 0.0);
  EXPECT_EQ(change.old_weight, 0.05);
  EXPECT_EQ(g.edge_count(cfg.prune_threshold), 0u);
}

TEST(ApplyAction, AdditiveRuleAddsNormalizedAction) {
  EnvConfig cfg;
  cfg.mutation = MutationRule::additive;
  Rng rng(8);
  std::size_t clamped = 0;
  WeightedGraph g(2);
  g.set_weight(0, 1, 0.2);
  apply_action(g, 0.0, cfg, rng, clamped);
  EXPECT_DOUBLE_EQ(g.weight(0, 1), 0.7);
  apply_action(g, 0.0, cfg, rng, clamped);
  EXPECT_EQ(g.weight(0, 1), 1.0);
}

TEST(CompositeReward, Examples) {
  EnvConfig cfg;
  cfg.reward_weights = {1, 1, 1, 1};
  EXPECT_DOUBLE_EQ(composite_reward(complete(5, 1.0), cfg).composite, 0.8);

  Rng rng(9);
  const auto g = random_graph(5, rng);
  cfg.reward_weights = {1, 0, 0, 0};
  const auto b = composite_reward(g, cfg);
  EXPECT_EQ(b.composite, b.oc);
  EXPECT_EQ(composite_reward(complete(4, 0.01), EnvConfig{}).oc, 0.01);

  WeightedGraph empty(4);
  EXPECT_EQ(composite_reward(empty, cfg).composite, 0.0);
}

TEST(CompositeReward, ComposesOracleMetrics) {
  Rng rng(10);
  EnvConfig cfg;
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = random_graph(2 + rng() % 6, rng);
    const auto rows = oracle::to_rows(g);
    const double n = static_cast<double>(g.size());
    const double expected = oracle::overall_connectivity(rows) - 0.5 * oracle::degree_variance(rows) -
                            0.5 * oracle::average_path_length(rows, cfg.prune_threshold) / n -
                            0.5 * oracle::dominance_penalty(rows) / (n - 1.0);
    EXPECT_NEAR(composite_reward(g, cfg).composite, expected, 1e-12);
  }
}

TEST(Step, ZeroActionsKeepGraphAndScoreIt) {
  Rng rng(11);
  const auto g = random_graph(4, rng);
  EnvConfig cfg;
  cfg.max_steps = 3;
  GraphEnvironment env(cfg);
  env.reset(g);
  const std::vector<double> zeros(4, 0.0);
  for (int s = 1; s <= 3; ++s) {
    const auto out = env.step(zeros);
    EXPECT_EQ(out.next_state.graph.weights(), g.weights());
    EXPECT_EQ(out.reward, composite_reward(g, cfg).composite);
    EXPECT_EQ(out.done, s == 3);
    EXPECT_EQ(out.modified_edges.size(), 4u);
  }
}

TEST(Step, WrongActionCountIsRejected) {
  GraphEnvironment env(EnvConfig{});
  env.reset(complete(3, 0.5));
  const std::vector<double> two(2, 0.0);
  EXPECT_THROW(env.step(two), std::invalid_argument);
}

TEST(Step, MatchesHandTrace) {
  // Three agents on a 3-node graph; replay the RNG draws by hand.
  WeightedGraph g(3);
  g.set_weight(0, 1, 0.2);
  g.set_weight(0, 2, 0.5);
  g.set_weight(1, 2, 0.3);
  EnvConfig cfg;
  cfg.seed = 1234;
  GraphEnvironment env(cfg);
  env.reset(g);
  const std::vector<double> actions = {1.0, -0.5, 0.25};
  const auto out = env.step(actions);

  Rng script(1234);
  double w[3] = {0.2, 0.5, 0.3};  // (0,1), (0,2), (1,2)
  const std::pair<std::size_t, std::size_t> pairs[3] = {{0, 1}, {0, 2}, {1, 2}};
  for (std::size_t agent = 0; agent < 3; ++agent) {
    const double u = uniform01(script) * (w[0] + w[1] + w[2]);
    std::size_t pick = u < w[0] ? 0 : (u < w[0] + w[1] ? 1 : 2);
    const double before = w[pick];
    w[pick] = std::clamp(w[pick] + 0.1 * actions[agent], 0.0, 1.0);
    ASSERT_EQ(out.modified_edges[agent].i, pairs[pick].first);
    ASSERT_EQ(out.modified_edges[agent].j, pairs[pick].second);
    EXPECT_EQ(out.modified_edges[agent].old_weight, before);
    EXPECT_DOUBLE_EQ(out.modified_edges[agent].new_weight, w[pick]);
  }
  const auto expected = oracle::from_upper(3, {w[0], w[1], w[2]});
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_DOUBLE_EQ(out.next_state.graph.weight(pairs[k].first, pairs[k].second), w[k]);
  }
  EXPECT_NEAR(out.reward, composite_reward(expected, cfg).composite, 1e-15);
  EXPECT_EQ(out.next_state.step, 1u);
}

TEST(Step, EmptyGraphSkipsAgentsButStillScores) {
  WeightedGraph g(3);
  g.set_weight(0, 1, 0.05);
  GraphEnvironment env(EnvConfig{});
  env.reset(g);
  const std::vector<double> down(3, -1.0);
  const auto out = env.step(down);
  EXPECT_EQ(out.modified_edges.size(), 1u);
  EXPECT_FALSE(out.next_state.graph.has_positive_weight());
  EXPECT_EQ(out.next_state.step, 1u);
}

TEST(Step, WeightsStayClampedAndSymmetric) {
  Rng rng(12);
  const auto g = random_graph(6, rng);
  EnvConfig cfg;
  cfg.max_steps = 1000;
  cfg.seed = 77;
  GraphEnvironment env(cfg);
  env.reset(g);
  for (int s = 0; s < 500; ++s) {
    std::vector<double> actions(6);
    for (double& a : actions) a = 4.0 * uniform01(rng) - 2.0;
    const auto out = env.step(actions);
    const auto& h = out.next_state.graph;
    for (std::size_t i = 0; i < 6; ++i) {
      EXPECT_EQ(h.weight(i, i), 0.0);
      for (std::size_t j = 0; j < 6; ++j) {
        ASSERT_GE(h.weight(i, j), 0.0);
        ASSERT_LE(h.weight(i, j), 1.0);
        ASSERT_EQ(h.weight(i, j), h.weight(j, i));
      }
    }
    EXPECT_EQ(out.reward, composite_reward(h, cfg).composite);
    if (!h.has_positive_weight()) break;
  }
  EXPECT_GT(env.clamped_action_count(), 0u);
}

TEST(Step, IdenticalSeedsGiveIdenticalStreams) {
  Rng rng(13);
  const auto g = random_graph(5, rng);
  EnvConfig cfg;
  cfg.seed = 5;
  cfg.max_steps = 50;
  GraphEnvironment a(cfg);
  GraphEnvironment b(cfg);
  a.reset(g);
  b.reset(g);
  for (int s = 0; s < 50; ++s) {
    std::vector<double> actions(5);
    for (double& x : actions) x = 2.0 * uniform01(rng) - 1.0;
    const auto oa = a.step(actions);
    const auto ob = b.step(actions);
    ASSERT_EQ(oa.next_state.observation(), ob.next_state.observation());
    ASSERT_EQ(oa.reward, ob.reward);
  }
}
