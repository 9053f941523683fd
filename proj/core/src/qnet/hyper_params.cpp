#include "pirl/qnet/hyper_params.hpp"

#include <algorithm>
#include <cmath>

#include "pirl/error.hpp"

namespace pirl::qnet {

void HyperParams::validate(const std::string& prefix) const {
  auto in_unit = [&](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw ValidationError(prefix + "." + name, "must lie in [0, 1]");
  };
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ValidationError(prefix + ".gamma", "must lie in (0, 1]");
  if (!(learning_rate > 0.0 && std::isfinite(learning_rate)))
    throw ValidationError(prefix + ".learning_rate", "must be > 0");
  in_unit(epsilon_start, "epsilon_start");
  if (!(epsilon_decay > 0.0 && epsilon_decay <= 1.0))
    throw ValidationError(prefix + ".epsilon_decay", "must lie in (0, 1]");
  in_unit(epsilon_min, "epsilon_min");
  if (batch_size == 0) throw ValidationError(prefix + ".batch_size", "must be >= 1");
  if (target_sync_steps == 0) throw ValidationError(prefix + ".target_sync_steps", "must be >= 1");
  if (buffer_capacity == 0) throw ValidationError(prefix + ".buffer_capacity", "must be >= 1");
  if (train_start > buffer_capacity)
    throw ValidationError(prefix + ".train_start", "must not exceed buffer_capacity");
  if (hidden_layers.empty()) throw ValidationError(prefix + ".hidden_layers", "must be non-empty");
  if (std::find(hidden_layers.begin(), hidden_layers.end(), 0u) != hidden_layers.end())
    throw ValidationError(prefix + ".hidden_layers", "sizes must be >= 1");
}

double epsilon_at(const HyperParams& hp, int episode) {
  return std::max(hp.epsilon_min, hp.epsilon_start * std::pow(hp.epsilon_decay, episode));
}

}  // namespace pirl::qnet
