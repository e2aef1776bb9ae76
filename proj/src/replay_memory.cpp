#include "groupform/replay_memory.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace groupform {

ReplayMemory::ReplayMemory(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw std::invalid_argument("replay capacity must be positive");
}

void ReplayMemory::push(Experience e) {
  if (e.state.size() != e.next_state.size()) {
    throw std::invalid_argument("state and next_state lengths differ");
  }
  if (buffer_.size() == capacity_) buffer_.pop_front();
  buffer_.push_back(std::move(e));
}

std::vector<std::size_t> ReplayMemory::sample_indices(std::size_t batch_size, Rng& rng) const {
  const std::size_t n = buffer_.size();
  if (batch_size > n) throw std::length_error("buffer underfilled");
  // Floyd's algorithm: k draws, each slot equally likely, no O(n) pass.
  std::unordered_set<std::size_t> chosen;
  std::vector<std::size_t> out;
  out.reserve(batch_size);
  for (std::size_t j = n - batch_size; j < n; ++j) {
    std::uniform_int_distribution<std::size_t> pick(0, j);
    std::size_t t = pick(rng);
    if (!chosen.insert(t).second) {
      t = j;
      chosen.insert(t);
    }
    out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Experience> ReplayMemory::sample(std::size_t batch_size, Rng& rng) const {
  std::vector<Experience> batch;
  batch.reserve(batch_size);
  for (std::size_t i : sample_indices(batch_size, rng)) batch.push_back(buffer_[i]);
  return batch;
}

}  // namespace groupform
