#pragma once

#include <array>

#include "pirl/env/environment.hpp"

namespace pirl::env {

// State layout: cart position [m], cart velocity [m/s], pole angle [rad],
// pole angular velocity [rad/s].
using CartPoleState = std::array<double, 4>;

struct Acceleration {
  double linear = 0.0;   // m/s^2
  double angular = 0.0;  // rad/s^2
};

// Frictionless cart-pole equations of motion.
Acceleration cartpole_derivatives(const CartPoleParams& params, const CartPoleState& state,
                                  double force);

class CartPole final : public Environment {
 public:
  static constexpr std::size_t kPushLeft = 0;
  static constexpr std::size_t kPushRight = 1;

  explicit CartPole(EnvSpec spec);

  Observation reset(Rng& rng) override;
  StepResult step(std::size_t action) override;

  std::size_t observation_size() const override { return 4; }
  std::size_t action_count() const override { return 2; }
  Observation observation() const override { return {state_.begin(), state_.end()}; }

  const CartPoleState& state() const noexcept { return state_; }
  // Places the system in an arbitrary state and starts a fresh episode.
  void set_state(const CartPoleState& state);

 private:
  CartPoleState state_{};
};

}  // namespace pirl::env
