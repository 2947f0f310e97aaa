#pragma once

#include <array>
#include <cstddef>

#include "wpevo/environments.hpp"
#include "wpevo/random.hpp"

namespace wpevo::envs {

struct OrientationState {
  double agent_x = 0.0;
  double circle_x = 0.0;
  double circle_y = 0.0;   // height of the circle centre above the floor
  double circle_vx = 0.0;  // signed horizontal speed
  std::size_t circles_dropped = 0;
};

/// Partially observable tracking task. Circles fall from the top of the arena
/// while drifting sideways faster than the agent can move, bouncing off the
/// side walls. The agent only moves horizontally along the floor and senses
/// through five upward rays; a circle that leaves the fan must be tracked from
/// memory. Each landing scores max(0, 1 - |agent_x - circle_x| / width).
///
/// Actions: 0 move left, 1 stay, 2 move right.
class AgentOrientation final : public Environment {
 public:
  static constexpr double kWidth = 400.0;
  static constexpr double kHeight = 300.0;
  static constexpr double kAgentWidth = 30.0;
  static constexpr double kAgentSpeed = 4.0;
  static constexpr double kRadius = 15.0;
  static constexpr double kFallSpeed = 3.0;
  static constexpr double kCircleSpeed = 6.0;
  static constexpr std::size_t kCircles = 4;
  static constexpr std::size_t kSensors = 5;
  static constexpr double kFanHalfAngle = 3.14159265358979323846 / 4.0;
  /// Ticks for one circle to fall from the top to the floor.
  static constexpr std::size_t kTicksPerCircle =
      static_cast<std::size_t>((kHeight - 2.0 * kRadius) / kFallSpeed);
  static constexpr std::size_t kEpisodeTicks = kCircles * kTicksPerCircle;

  explicit AgentOrientation(std::size_t episode_cap = kEpisodeTicks) : Environment(episode_cap) {}

  TaskId id() const override { return TaskId::AgentOrientation; }
  Observation observe() const override;
  const OrientationState& state() const { return state_; }
  void set_state(const OrientationState& s) { state_ = s; }

  /// Normalized distance along sensor ray k (0 = leftmost), 1 when the ray
  /// reaches the top of the arena without touching the circle.
  static double sensor_reading(const OrientationState& s, std::size_t k);

 private:
  void reset_state(std::int64_t seed) override;
  std::pair<double, bool> advance(const Action& action) override;
  void spawn_circle();

  OrientationState state_;
  Rng rng_;
};

}  // namespace wpevo::envs
