#include <gtest/gtest.h>

#include <algorithm>
#include <string>

#include "groupform/metrics.hpp"
#include "groupform/random.hpp"
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

WeightedGraph star3() {
  WeightedGraph g(3);
  g.set_weight(0, 1, 1);
  g.set_weight(0, 2, 1);
  return g;
}

}  // namespace

TEST(OverallConnectivity, Examples) {
  EXPECT_EQ(overall_connectivity(complete(5, 1.0)), 1.0);
  EXPECT_EQ(overall_connectivity(WeightedGraph(4)), 0.0);
  WeightedGraph g(4);
  g.set_weight(0, 1, 1);
  g.set_weight(2, 3, 0.5);
  EXPECT_DOUBLE_EQ(overall_connectivity(g), 0.25);
}

TEST(OverallConnectivity, UndefinedBelowTwoNodes) {
  try {
    overall_connectivity(WeightedGraph(1));
    FAIL();
  } catch (const std::domain_error& e) {
    EXPECT_TRUE(std::string(e.what()).starts_with("metric undefined")) << e.what();
  }
  EXPECT_THROW(average_path_length(WeightedGraph(1)), std::domain_error);
}

TEST(WeightedDegree, Examples) {
  WeightedGraph g(3);
  g.set_weight(0, 1, 0.4);
  EXPECT_EQ(weighted_degree(g, ParticipantId{2}), 0.0);
  EXPECT_EQ(weighted_degree(complete(5, 1.0), ParticipantId{3}), 4.0);

  Rng rng(3);
  WeightedGraph r(6);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = i + 1; j < 6; ++j) r.set_weight(i, j, uniform01(rng));
  }
  const auto expected = oracle::strengths(oracle::to_rows(r));
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_NEAR(weighted_degree(r, ParticipantId{i}), expected[i], 1e-12);
  }
}

TEST(DegreeVariance, Examples) {
  EXPECT_EQ(degree_variance(complete(6, 0.3)), 0.0);
  EXPECT_NEAR(degree_variance(star3()), 2.0 / 9.0, 1e-15);
}

TEST(DegreeVariance, BinaryModeCountsNeighboursAboveTau) {
  WeightedGraph g(3);
  g.set_weight(0, 1, 0.9);
  g.set_weight(0, 2, 0.01);
  EXPECT_EQ(degrees(g, DegreeMode::binary), (std::vector<double>{1, 1, 0}));
  EXPECT_NEAR(degree_variance(g, DegreeMode::binary), 2.0 / 9.0, 1e-15);
}

TEST(AveragePathLength, Examples) {
  EXPECT_EQ(average_path_length(complete(5, 0.8)), 1.0);
  WeightedGraph path(3);
  path.set_weight(0, 1, 1);
  path.set_weight(1, 2, 1);
  EXPECT_DOUBLE_EQ(average_path_length(path), 4.0 / 3.0);
  EXPECT_EQ(average_path_length(WeightedGraph(2)), 2.0);
}

TEST(AveragePathLength, EdgesAtThresholdAreAbsent) {
  WeightedGraph g(2);
  g.set_weight(0, 1, kDefaultPruneThreshold);
  EXPECT_EQ(average_path_length(g), 2.0);
  g.set_weight(0, 1, 0.06);
  EXPECT_EQ(average_path_length(g), 1.0);
}

TEST(DominancePenalty, Examples) {
  EXPECT_EQ(dominance_penalty(complete(4, 1.0)), 0.0);
  EXPECT_NEAR(dominance_penalty(star3()), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(dominance_penalty(WeightedGraph(3)), 0.0);
}

TEST(Metrics, ScalingWeightsScalesVarianceQuadratically) {
  Rng rng(5);
  WeightedGraph g(6);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = i + 1; j < 6; ++j) g.set_weight(i, j, 0.5 * uniform01(rng));
  }
  WeightedGraph scaled(6);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = i + 1; j < 6; ++j) scaled.set_weight(i, j, 2.0 * g.weight(i, j));
  }
  EXPECT_NEAR(degree_variance(scaled), 4.0 * degree_variance(g), 1e-12);
  EXPECT_NEAR(overall_connectivity(scaled), 2.0 * overall_connectivity(g), 1e-12);
  EXPECT_NEAR(dominance_penalty(scaled), 2.0 * dominance_penalty(g), 1e-12);
}

TEST(Metrics, AgreeWithBruteForceOnSmallGraphs) {
  Rng rng(17);
  const double levels[] = {0.0, 0.5, 1.0};
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + rng() % 5;
    std::vector<double> upper(WeightedGraph::pair_count(n));
    for (double& w : upper) w = levels[rng() % 3];
    const auto g = oracle::from_upper(n, upper);
    const auto rows = oracle::to_rows(g);
    EXPECT_NEAR(overall_connectivity(g), oracle::overall_connectivity(rows), 1e-12);
    EXPECT_NEAR(degree_variance(g), oracle::degree_variance(rows), 1e-12);
    EXPECT_NEAR(average_path_length(g), oracle::average_path_length(rows, kDefaultPruneThreshold), 1e-12);
    EXPECT_NEAR(dominance_penalty(g), oracle::dominance_penalty(rows), 1e-12);
  }
}

TEST(Metrics, RelabelingNodesLeavesMetricsUnchanged) {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 6;
    WeightedGraph g(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) g.set_weight(i, j, (rng() % 3) * 0.5);
    }
    std::vector<std::size_t> perm = {0, 1, 2, 3, 4, 5};
    std::shuffle(perm.begin(), perm.end(), rng);
    WeightedGraph p(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) p.set_weight(perm[i], perm[j], g.weight(i, j));
    }
    EXPECT_NEAR(degree_variance(p), degree_variance(g), 1e-12);
    EXPECT_EQ(average_path_length(p), average_path_length(g));
    EXPECT_NEAR(dominance_penalty(p), dominance_penalty(g), 1e-12);
  }
}
