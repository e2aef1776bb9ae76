#pragma once

#include <cstddef>
#include <deque>
#include <vector>

#include "groupform/random.hpp"

namespace groupform {

struct Experience {
  std::vector<double> state;
  std::vector<double> actions;  // one entry per agent
  double reward = 0.0;
  std::vector<double> next_state;
  bool done = false;

  friend bool operator==(const Experience&, const Experience&) = default;
};

/// Bounded FIFO of transitions; pushing into a full memory evicts the oldest.
class ReplayMemory {
 public:
  explicit ReplayMemory(std::size_t capacity);

  void push(Experience e);

  /// `batch_size` distinct experiences drawn uniformly without replacement.
  /// Throws std::length_error("buffer underfilled") when too few are stored.
  std::vector<Experience> sample(std::size_t batch_size, Rng& rng) const;

  /// Indices behind sample(); ascending.
  std::vector<std::size_t> sample_indices(std::size_t batch_size, Rng& rng) const;

  std::size_t size() const { return buffer_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return buffer_.empty(); }
  const Experience& operator[](std::size_t i) const { return buffer_[i]; }

 private:
  std::size_t capacity_;
  std::deque<Experience> buffer_;
};

}  // namespace groupform
