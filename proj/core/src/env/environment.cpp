#include "pirl/env/environment.hpp"

#include <cmath>
#include <string>

#include "pirl/env/cartpole.hpp"
#include "pirl/env/homenav.hpp"
#include "pirl/error.hpp"

namespace pirl::env {

std::string_view to_string(EnvKind kind) {
  switch (kind) {
    case EnvKind::CartPole:
      return "cartpole";
    case EnvKind::HomeNav:
      return "homenav";
  }
  return "unknown";
}

EnvKind env_kind_from_string(std::string_view name) {
  if (name == "cartpole") return EnvKind::CartPole;
  if (name == "homenav") return EnvKind::HomeNav;
  throw ValidationError("env.kind", "unknown environment '" + std::string(name) + "'");
}

std::vector<Rect> HomeNavParams::default_obstacles() {
  return {
      {2.5, 0.0, 3.5, 5.5},
      {5.5, 4.5, 6.5, 10.0},
      {7.5, 2.0, 9.5, 3.0},
  };
}

EnvSpec EnvSpec::cartpole_default() {
  EnvSpec spec;
  spec.kind = EnvKind::CartPole;
  spec.max_steps = 500;
  return spec;
}

EnvSpec EnvSpec::homenav_default() {
  EnvSpec spec;
  spec.kind = EnvKind::HomeNav;
  spec.max_steps = 400;
  return spec;
}

void EnvSpec::validate(const std::string& prefix) const {
  if (max_steps < 1) throw ValidationError(prefix + ".max_steps", "must be >= 1");
  auto positive = [&](double v, const char* name) {
    if (!(std::isfinite(v) && v > 0.0))
      throw ValidationError(prefix + "." + name, "must be a positive finite number");
  };
  if (kind == EnvKind::CartPole) {
    positive(cartpole.gravity, "gravity");
    positive(cartpole.cart_mass, "cart_mass");
    positive(cartpole.pole_mass, "pole_mass");
    positive(cartpole.half_length, "half_length");
    positive(cartpole.force_mag, "force_mag");
    positive(cartpole.dt, "dt");
    positive(cartpole.angle_limit, "angle_limit");
    positive(cartpole.position_limit, "position_limit");
    if (!(cartpole.init_bound >= 0.0 && std::isfinite(cartpole.init_bound)))
      throw ValidationError(prefix + ".init_bound", "must be a non-negative finite number");
    return;
  }
  const HomeNavParams& h = homenav;
  positive(h.width, "width");
  positive(h.height, "height");
  positive(h.step_size, "step_size");
  positive(h.goal_radius, "goal_radius");
  positive(h.ray_clip, "ray_clip");
  for (std::size_t i = 0; i < h.obstacles.size(); ++i) {
    const Rect& r = h.obstacles[i];
    const std::string path = prefix + ".obstacles[" + std::to_string(i) + "]";
    if (!(r.x0 < r.x1 && r.y0 < r.y1)) throw ValidationError(path, "empty rectangle");
    if (r.contains(h.start)) throw ValidationError(path, "covers the start point");
    if (r.contains(h.goal)) throw ValidationError(path, "covers the goal point");
  }
  if (!is_free(h, h.start)) throw ValidationError(prefix + ".start", "must lie strictly inside the arena");
  if (!(h.goal.x > 0.0 && h.goal.x < h.width && h.goal.y > 0.0 && h.goal.y < h.height))
    throw ValidationError(prefix + ".goal", "must lie strictly inside the arena");
}

Environment::Environment(EnvSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

void Environment::begin_step(std::size_t action) {
  if (!started_) throw UsageError("step() called before reset()");
  if (finished_) throw UsageError("step() called on a finished episode; call reset()");
  if (action >= action_count())
    throw UsageError("action " + std::to_string(action) + " out of range [0, " +
                     std::to_string(action_count()) + ")");
}

void Environment::end_step(StepResult& result) {
  ++steps_;
  if (steps_ >= spec_.max_steps) result.truncated = true;
  finished_ = result.terminal || result.truncated;
}

std::unique_ptr<Environment> make_environment(const EnvSpec& spec) {
  switch (spec.kind) {
    case EnvKind::CartPole:
      return std::make_unique<CartPole>(spec);
    case EnvKind::HomeNav:
      return std::make_unique<HomeNav>(spec);
  }
  throw UsageError("unknown environment kind");
}

}  // namespace pirl::env
