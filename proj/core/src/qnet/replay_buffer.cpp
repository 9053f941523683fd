#include "pirl/qnet/replay_buffer.hpp"

#include "pirl/error.hpp"

namespace pirl::qnet {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw UsageError("ReplayBuffer capacity must be >= 1");
  items_.reserve(capacity);
}

void ReplayBuffer::push(Transition t) {
  if (items_.size() < capacity_) {
    items_.push_back(std::move(t));
    return;
  }
  items_[head_] = std::move(t);
  head_ = (head_ + 1) % capacity_;
}

const Transition& ReplayBuffer::at(std::size_t i) const {
  if (i >= items_.size()) throw UsageError("ReplayBuffer::at out of range");
  return items_[(head_ + i) % items_.size()];
}

std::vector<Transition> ReplayBuffer::sample(std::size_t n, Rng& rng) const {
  if (n > items_.size())
    throw UsageError("cannot sample " + std::to_string(n) + " transitions from a buffer of " +
                     std::to_string(items_.size()));
  std::vector<Transition> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(items_[rng.below(items_.size())]);
  return out;
}

}  // namespace pirl::qnet
