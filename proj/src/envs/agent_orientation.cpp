#include "wpevo/envs/agent_orientation.hpp"

#include <algorithm>
#include <cmath>

namespace wpevo::envs {

double AgentOrientation::sensor_reading(const OrientationState& s, std::size_t k) {
  const double angle =
      -kFanHalfAngle + 2.0 * kFanHalfAngle * static_cast<double>(k) / (kSensors - 1);
  const double dx = std::sin(angle);
  const double dy = std::cos(angle);
  const double range = kHeight / dy;

  // Ray from (agent_x, 0) against the circle: |f + t d|^2 = r^2 with f = origin - centre.
  const double fx = s.agent_x - s.circle_x;
  const double fy = -s.circle_y;
  const double b = fx * dx + fy * dy;
  const double c = fx * fx + fy * fy - kRadius * kRadius;
  const double disc = b * b - c;
  if (disc < 0.0) return 1.0;
  const double root = std::sqrt(disc);
  double t = -b - root;
  if (t < 0.0) t = -b + root;
  if (t < 0.0 || t >= range) return 1.0;
  return t / range;
}

Observation AgentOrientation::observe() const {
  Observation obs;
  obs.size = kSensors;
  for (std::size_t k = 0; k < kSensors; ++k) obs.values[k] = sensor_reading(state_, k);
  return obs;
}

void AgentOrientation::spawn_circle() {
  std::uniform_real_distribution<double> position(kRadius, kWidth - kRadius);
  state_.circle_x = position(rng_);
  state_.circle_y = kHeight - kRadius;
  state_.circle_vx = bernoulli(rng_, 0.5) ? kCircleSpeed : -kCircleSpeed;
}

void AgentOrientation::reset_state(std::int64_t seed) {
  rng_.seed(static_cast<std::uint64_t>(seed));
  state_ = OrientationState{};
  state_.agent_x = kWidth / 2.0;
  spawn_circle();
}

std::pair<double, bool> AgentOrientation::advance(const Action& action) {
  const double move = static_cast<double>(discrete_index(action, 3)) - 1.0;
  const double half = kAgentWidth / 2.0;
  state_.agent_x = std::clamp(state_.agent_x + move * kAgentSpeed, half, kWidth - half);

  double x = state_.circle_x + state_.circle_vx;
  if (x < kRadius) {
    x = 2.0 * kRadius - x;
    state_.circle_vx = -state_.circle_vx;
  } else if (x > kWidth - kRadius) {
    x = 2.0 * (kWidth - kRadius) - x;
    state_.circle_vx = -state_.circle_vx;
  }
  state_.circle_x = x;
  state_.circle_y -= kFallSpeed;

  if (state_.circle_y > kRadius) return {0.0, false};

  const double score = std::max(0.0, 1.0 - std::abs(state_.agent_x - state_.circle_x) / kWidth);
  ++state_.circles_dropped;
  const bool finished = state_.circles_dropped >= kCircles;
  if (!finished) spawn_circle();
  return {score, finished};
}

}  // namespace wpevo::envs
