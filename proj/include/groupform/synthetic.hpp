#pragma once
// Deterministic stand-in for a coded collaboration dataset.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "groupform/graph.hpp"

namespace groupform {

struct SyntheticSpec {
  std::size_t participants = 48;
  std::size_t groups = 10;
  std::size_t codes = 12;  // shared code pool per group
  std::size_t tasks = 11;
  double overlap_density = 0.5;  // chance a participant holds each shared code
  std::uint64_t seed = 42;

  void validate() const;
};

/// Participants are dealt round-robin into groups. Each participant carries a
/// private code (never shared) plus each of its group's shared codes with
/// probability `overlap_density`, every record tagged with a random task.
/// Density 0 yields no overlap at all; density 1 yields complete cliques.
std::vector<InteractionRecord> generate_synthetic(const SyntheticSpec& spec);

}  // namespace groupform
