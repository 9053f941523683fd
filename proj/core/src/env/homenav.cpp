#include "pirl/env/homenav.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pirl/error.hpp"

namespace pirl::env {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

constexpr std::array<Vec2, kRayCount> kRayDirections{{
    {1.0, 0.0},
    {kInvSqrt2, kInvSqrt2},
    {0.0, 1.0},
    {-kInvSqrt2, kInvSqrt2},
    {-1.0, 0.0},
    {-kInvSqrt2, -kInvSqrt2},
    {0.0, -1.0},
    {kInvSqrt2, -kInvSqrt2},
}};

// Entry distance of the ray p + t*d into `r`, or +inf when it misses.
double ray_rect(Vec2 p, Vec2 d, const Rect& r) {
  double t_near = -std::numeric_limits<double>::infinity();
  double t_far = std::numeric_limits<double>::infinity();
  const double origin[2] = {p.x, p.y};
  const double dir[2] = {d.x, d.y};
  const double lo[2] = {r.x0, r.y0};
  const double hi[2] = {r.x1, r.y1};
  for (int axis = 0; axis < 2; ++axis) {
    if (dir[axis] == 0.0) {
      if (origin[axis] < lo[axis] || origin[axis] > hi[axis])
        return std::numeric_limits<double>::infinity();
      continue;
    }
    double t0 = (lo[axis] - origin[axis]) / dir[axis];
    double t1 = (hi[axis] - origin[axis]) / dir[axis];
    if (t0 > t1) std::swap(t0, t1);
    t_near = std::max(t_near, t0);
    t_far = std::min(t_far, t1);
  }
  if (t_near > t_far || t_far < 0.0) return std::numeric_limits<double>::infinity();
  return std::max(t_near, 0.0);
}

double ray_walls(const HomeNavParams& h, Vec2 p, Vec2 d) {
  double t = std::numeric_limits<double>::infinity();
  if (d.x > 0.0) t = std::min(t, (h.width - p.x) / d.x);
  if (d.x < 0.0) t = std::min(t, -p.x / d.x);
  if (d.y > 0.0) t = std::min(t, (h.height - p.y) / d.y);
  if (d.y < 0.0) t = std::min(t, -p.y / d.y);
  return t;
}

// Axis-aligned move from `a` to `b` sweeps the segment's bounding box.
bool move_hits_obstacle(const HomeNavParams& h, Vec2 a, Vec2 b) {
  const double x0 = std::min(a.x, b.x), x1 = std::max(a.x, b.x);
  const double y0 = std::min(a.y, b.y), y1 = std::max(a.y, b.y);
  return std::any_of(h.obstacles.begin(), h.obstacles.end(), [&](const Rect& r) {
    return x0 <= r.x1 && x1 >= r.x0 && y0 <= r.y1 && y1 >= r.y0;
  });
}

}  // namespace

bool is_free(const HomeNavParams& h, Vec2 p) {
  if (!(p.x > 0.0 && p.x < h.width && p.y > 0.0 && p.y < h.height)) return false;
  return std::none_of(h.obstacles.begin(), h.obstacles.end(),
                      [&](const Rect& r) { return r.contains(p); });
}

std::array<double, kRayCount> sense_rays(const HomeNavParams& h, Vec2 position) {
  std::array<double, kRayCount> out{};
  for (std::size_t i = 0; i < kRayCount; ++i) {
    const Vec2 d = kRayDirections[i];
    double t = ray_walls(h, position, d);
    for (const Rect& r : h.obstacles) t = std::min(t, ray_rect(position, d, r));
    out[i] = std::min(t, h.ray_clip);
  }
  return out;
}

HomeNav::HomeNav(EnvSpec spec) : Environment(std::move(spec)) {
  if (this->spec().kind != EnvKind::HomeNav) throw UsageError("HomeNav needs a homenav EnvSpec");
  position_ = this->spec().homenav.start;
}

Observation HomeNav::reset(Rng& /*rng*/) {
  position_ = spec().homenav.start;
  begin_episode();
  return observation();
}

void HomeNav::set_position(Vec2 p) {
  if (!is_free(spec().homenav, p)) throw UsageError("set_position: point is not free");
  position_ = p;
  begin_episode();
}

Observation HomeNav::observation() const {
  const HomeNavParams& h = spec().homenav;
  Observation obs;
  obs.reserve(observation_size());
  obs.push_back(position_.x);
  obs.push_back(position_.y);
  obs.push_back(h.goal.x - position_.x);
  obs.push_back(h.goal.y - position_.y);
  for (double r : sense_rays(h, position_)) obs.push_back(r);
  return obs;
}

StepResult HomeNav::step(std::size_t action) {
  begin_step(action);
  const HomeNavParams& h = spec().homenav;
  Vec2 next = position_;
  switch (action) {
    case kUp:
      next.y += h.step_size;
      break;
    case kDown:
      next.y -= h.step_size;
      break;
    case kLeft:
      next.x -= h.step_size;
      break;
    default:
      next.x += h.step_size;
      break;
  }

  StepResult result;
  if (!is_free(h, next) || move_hits_obstacle(h, position_, next)) {
    result.reward = h.collision_reward;
  } else {
    position_ = next;
    const double dist = std::hypot(h.goal.x - position_.x, h.goal.y - position_.y);
    if (dist <= h.goal_radius) {
      result.terminal = true;
      result.reward = h.goal_reward;
    } else {
      result.reward = h.step_reward;
    }
  }
  end_step(result);
  result.observation = observation();
  return result;
}

}  // namespace pirl::env
