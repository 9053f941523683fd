#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pirl/rng.hpp"

namespace pirl::env {

using Observation = std::vector<double>;

struct StepResult {
  Observation observation;
  double reward = 0.0;
  bool terminal = false;
  // Step-limit cutoff. Set together with `terminal` only when both coincide.
  bool truncated = false;

  bool done() const noexcept { return terminal || truncated; }
};

enum class EnvKind { CartPole, HomeNav };

std::string_view to_string(EnvKind kind);
EnvKind env_kind_from_string(std::string_view name);

// Canonical cart-pole benchmark constants.
struct CartPoleParams {
  double gravity = 9.8;
  double cart_mass = 1.0;
  double pole_mass = 0.1;
  double half_length = 0.5;
  double force_mag = 10.0;
  double dt = 0.02;
  double angle_limit = 12.0 * 2.0 * 3.14159265358979323846 / 360.0;
  double position_limit = 2.4;
  double init_bound = 0.05;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

// Closed axis-aligned rectangle [x0, x1] x [y0, y1].
struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

  bool contains(Vec2 p) const noexcept {
    return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

struct HomeNavParams {
  double width = 10.0;
  double height = 10.0;
  double step_size = 0.25;
  Vec2 start{1.0, 1.0};
  Vec2 goal{9.0, 9.0};
  double goal_radius = 0.5;
  double ray_clip = 5.0;
  double step_reward = -0.01;
  double collision_reward = -1.0;
  double goal_reward = 10.0;
  std::vector<Rect> obstacles = default_obstacles();

  static std::vector<Rect> default_obstacles();
};

struct EnvSpec {
  EnvKind kind = EnvKind::CartPole;
  int max_steps = 500;
  CartPoleParams cartpole;
  HomeNavParams homenav;

  static EnvSpec cartpole_default();
  static EnvSpec homenav_default();

  // Throws ValidationError with a field path under `prefix`.
  void validate(const std::string& prefix = "env") const;
};

// Episodic environment with continuous observations and discrete actions.
// Single-threaded state machine; distinct instances are independent.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual Observation reset(Rng& rng) = 0;
  // Throws UsageError on an invalid action or when the episode has ended.
  virtual StepResult step(std::size_t action) = 0;

  virtual std::size_t observation_size() const = 0;
  virtual std::size_t action_count() const = 0;
  virtual Observation observation() const = 0;

  const EnvSpec& spec() const noexcept { return spec_; }
  int steps() const noexcept { return steps_; }
  bool finished() const noexcept { return finished_; }

 protected:
  explicit Environment(EnvSpec spec);

  // Shared pre-step bookkeeping; throws if stepping is not allowed.
  void begin_step(std::size_t action);
  void end_step(StepResult& result);
  void begin_episode() noexcept {
    steps_ = 0;
    finished_ = false;
    started_ = true;
  }

 private:
  EnvSpec spec_;
  int steps_ = 0;
  bool finished_ = false;
  bool started_ = false;
};

std::unique_ptr<Environment> make_environment(const EnvSpec& spec);

}  // namespace pirl::env
