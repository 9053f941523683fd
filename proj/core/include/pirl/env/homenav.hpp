#pragma once

#include <array>

#include "pirl/env/environment.hpp"

namespace pirl::env {

inline constexpr std::size_t kRayCount = 8;

// Ray directions, counter-clockwise from east in 45 degree steps:
// E, NE, N, NW, W, SW, S, SE.
enum class Ray : std::size_t { East = 0, NorthEast, North, NorthWest, West, SouthWest, South, SouthEast };

// Distance from `position` to the nearest obstacle face or arena wall along
// each compass direction, clipped to `params.ray_clip`.
std::array<double, kRayCount> sense_rays(const HomeNavParams& params, Vec2 position);

// True when `p` lies strictly inside the arena and outside every obstacle.
bool is_free(const HomeNavParams& params, Vec2 p);

// Top-down navigation from a start point to a goal disc around rectangular
// obstacles. Observation: x, y, goal dx, goal dy, then the 8 ray distances.
class HomeNav final : public Environment {
 public:
  static constexpr std::size_t kUp = 0;
  static constexpr std::size_t kDown = 1;
  static constexpr std::size_t kLeft = 2;
  static constexpr std::size_t kRight = 3;

  explicit HomeNav(EnvSpec spec);

  Observation reset(Rng& rng) override;
  StepResult step(std::size_t action) override;

  std::size_t observation_size() const override { return 4 + kRayCount; }
  std::size_t action_count() const override { return 4; }
  Observation observation() const override;

  Vec2 position() const noexcept { return position_; }
  // Teleports the agent (must be a free cell) and starts a fresh episode.
  void set_position(Vec2 p);

 private:
  Vec2 position_{};
};

}  // namespace pirl::env
