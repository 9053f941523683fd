#include "pirl/env/cartpole.hpp"

#include <cmath>

#include "pirl/error.hpp"

namespace pirl::env {

Acceleration cartpole_derivatives(const CartPoleParams& p, const CartPoleState& state,
                                  double force) {
  const double theta = state[2];
  const double theta_dot = state[3];
  const double sin_t = std::sin(theta);
  const double cos_t = std::cos(theta);
  const double total_mass = p.cart_mass + p.pole_mass;
  const double pole_ml = p.pole_mass * p.half_length;

  const double temp = (force + pole_ml * theta_dot * theta_dot * sin_t) / total_mass;
  const double angular =
      (p.gravity * sin_t - cos_t * temp) /
      (p.half_length * (4.0 / 3.0 - p.pole_mass * cos_t * cos_t / total_mass));
  const double linear =
      (force + pole_ml * (theta_dot * theta_dot * sin_t - angular * cos_t)) / total_mass;
  return {linear, angular};
}

CartPole::CartPole(EnvSpec spec) : Environment(std::move(spec)) {
  if (this->spec().kind != EnvKind::CartPole) throw UsageError("CartPole needs a cartpole EnvSpec");
}

Observation CartPole::reset(Rng& rng) {
  const double bound = spec().cartpole.init_bound;
  for (double& v : state_) v = rng.uniform(-bound, bound);
  begin_episode();
  return observation();
}

void CartPole::set_state(const CartPoleState& state) {
  state_ = state;
  begin_episode();
}

StepResult CartPole::step(std::size_t action) {
  begin_step(action);
  const CartPoleParams& p = spec().cartpole;
  const double force = action == kPushRight ? p.force_mag : -p.force_mag;
  const Acceleration acc = cartpole_derivatives(p, state_, force);

  auto& [x, x_dot, theta, theta_dot] = state_;
  x += p.dt * x_dot;
  x_dot += p.dt * acc.linear;
  theta += p.dt * theta_dot;
  theta_dot += p.dt * acc.angular;

  StepResult result;
  result.terminal = std::abs(theta) > p.angle_limit || std::abs(x) > p.position_limit;
  // Every step earns +1, including the one on which the pole falls, so the
  // episode return equals the episode length.
  result.reward = 1.0;
  end_step(result);
  result.observation = observation();
  return result;
}

}  // namespace pirl::env
