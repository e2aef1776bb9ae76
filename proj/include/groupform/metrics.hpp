#pragma once
// Graph-quality metrics used as reward terms.
//
// Degrees are weighted (node strength) unless DegreeMode::binary is asked
// for, in which case a neighbour counts when its edge weight exceeds tau.
// Path lengths are hop counts on the graph binarized at tau; a disconnected
// pair contributes n.

#include <cstddef>
#include <vector>

#include "groupform/graph.hpp"

namespace groupform {

enum class DegreeMode { weighted, binary };

inline constexpr double kDefaultPruneThreshold = 0.05;

struct RewardBreakdown {
  double oc = 0.0;   // overall connectivity
  double var = 0.0;  // degree variance
  double pl = 0.0;   // average path length (hops)
  double pd = 0.0;   // dominance penalty
  double composite = 0.0;
};

/// Sum of pair weights over n(n-1)/2. Throws std::domain_error when n < 2.
double overall_connectivity(const WeightedGraph& g);

double weighted_degree(const WeightedGraph& g, ParticipantId i);

std::vector<double> degrees(const WeightedGraph& g, DegreeMode mode = DegreeMode::weighted,
                            double tau = kDefaultPruneThreshold);

/// Population variance of the node degrees.
double degree_variance(const WeightedGraph& g, DegreeMode mode = DegreeMode::weighted,
                       double tau = kDefaultPruneThreshold);

/// Mean BFS hop distance over unordered pairs. Throws std::domain_error when n < 2.
double average_path_length(const WeightedGraph& g, double tau = kDefaultPruneThreshold);

/// max degree minus mean degree, never negative.
double dominance_penalty(const WeightedGraph& g, DegreeMode mode = DegreeMode::weighted,
                         double tau = kDefaultPruneThreshold);

}  // namespace groupform
