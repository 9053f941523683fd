#pragma once

#include <cstddef>
#include <vector>

#include "pirl/env/environment.hpp"
#include "pirl/rng.hpp"

namespace pirl::qnet {

struct Transition {
  env::Observation observation;
  std::size_t action = 0;
  double reward = 0.0;
  env::Observation next_observation;
  bool terminal = false;
};

// Bounded FIFO of transitions; the oldest entry is overwritten once full.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(Transition t);
  // Uniform with replacement. Throws UsageError if size() < n.
  std::vector<Transition> sample(std::size_t n, Rng& rng) const;

  std::size_t size() const noexcept { return items_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }
  // i-th entry counting from the oldest.
  const Transition& at(std::size_t i) const;

 private:
  std::size_t capacity_;
  std::size_t head_ = 0;  // next write slot once full
  std::vector<Transition> items_;
};

}  // namespace pirl::qnet
