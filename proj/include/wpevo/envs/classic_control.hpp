#pragma once

#include <array>
#include <cstddef>

#include "wpevo/environments.hpp"

// Reference dynamics of the four classic control tasks. Constants follow the
// widely used gym classic-control definitions.

namespace wpevo::envs {

struct CartPoleState {
  double x = 0.0;
  double x_dot = 0.0;
  double theta = 0.0;
  double theta_dot = 0.0;
};

/// Actions: 0 push left, 1 push right. +1 reward per tick including the failing one.
class CartPole final : public Environment {
 public:
  static constexpr double kGravity = 9.8;
  static constexpr double kCartMass = 1.0;
  static constexpr double kPoleMass = 0.1;
  static constexpr double kHalfLength = 0.5;
  static constexpr double kForce = 10.0;
  static constexpr double kTau = 0.02;
  static constexpr double kThetaLimit = 12.0 * 2.0 * 3.14159265358979323846 / 360.0;
  static constexpr double kXLimit = 2.4;

  explicit CartPole(std::size_t episode_cap = 200) : Environment(episode_cap) {}

  TaskId id() const override { return TaskId::CartPole; }
  Observation observe() const override;
  const CartPoleState& state() const { return state_; }
  void set_state(const CartPoleState& s) { state_ = s; }

 private:
  void reset_state(std::int64_t seed) override;
  std::pair<double, bool> advance(const Action& action) override;
  CartPoleState state_;
};

struct PendulumState {
  double theta = 0.0;  // 0 = upright
  double theta_dot = 0.0;
};

/// Box action: one torque in [-2, 2]. Reward is minus the quadratic cost.
class Pendulum final : public Environment {
 public:
  static constexpr double kGravity = 10.0;
  static constexpr double kMass = 1.0;
  static constexpr double kLength = 1.0;
  static constexpr double kMaxTorque = 2.0;
  static constexpr double kMaxSpeed = 8.0;
  static constexpr double kDt = 0.05;

  explicit Pendulum(std::size_t episode_cap = 200) : Environment(episode_cap) {}

  TaskId id() const override { return TaskId::Pendulum; }
  Observation observe() const override;
  const PendulumState& state() const { return state_; }
  void set_state(const PendulumState& s) { state_ = s; }

 private:
  void reset_state(std::int64_t seed) override;
  std::pair<double, bool> advance(const Action& action) override;
  PendulumState state_;
};

struct AcrobotState {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double dtheta1 = 0.0;
  double dtheta2 = 0.0;
};

/// Actions: 0 torque -1, 1 none, 2 torque +1 on the joint. RK4 with dt = 0.2.
/// -1 per tick, 0 on the tick the tip clears the bar.
class Acrobot final : public Environment {
 public:
  static constexpr double kDt = 0.2;
  static constexpr double kLinkLength1 = 1.0;
  static constexpr double kLinkMass1 = 1.0;
  static constexpr double kLinkMass2 = 1.0;
  static constexpr double kLinkCom1 = 0.5;
  static constexpr double kLinkCom2 = 0.5;
  static constexpr double kLinkMoi = 1.0;
  static constexpr double kGravity = 9.8;
  static constexpr double kPi = 3.14159265358979323846;
  static constexpr double kMaxVel1 = 4.0 * kPi;
  static constexpr double kMaxVel2 = 9.0 * kPi;

  explicit Acrobot(std::size_t episode_cap = 500) : Environment(episode_cap) {}

  TaskId id() const override { return TaskId::Acrobot; }
  Observation observe() const override;
  const AcrobotState& state() const { return state_; }
  void set_state(const AcrobotState& s) { state_ = s; }

  /// Time derivative of (theta1, theta2, dtheta1, dtheta2) under torque.
  static std::array<double, 4> derivatives(const std::array<double, 4>& s, double torque);
  bool tip_above_bar() const;

 private:
  void reset_state(std::int64_t seed) override;
  std::pair<double, bool> advance(const Action& action) override;
  AcrobotState state_;
};

struct MountainCarState {
  double position = -0.5;
  double velocity = 0.0;
};

/// Actions: 0 reverse, 1 coast, 2 accelerate. -1 per tick until x >= 0.5.
class MountainCar final : public Environment {
 public:
  static constexpr double kMinPosition = -1.2;
  static constexpr double kMaxPosition = 0.6;
  static constexpr double kMaxSpeed = 0.07;
  static constexpr double kGoalPosition = 0.5;
  static constexpr double kForce = 0.001;
  static constexpr double kGravity = 0.0025;

  explicit MountainCar(std::size_t episode_cap = 200) : Environment(episode_cap) {}

  TaskId id() const override { return TaskId::MountainCar; }
  Observation observe() const override;
  const MountainCarState& state() const { return state_; }
  void set_state(const MountainCarState& s) { state_ = s; }

 private:
  void reset_state(std::int64_t seed) override;
  std::pair<double, bool> advance(const Action& action) override;
  MountainCarState state_;
};

}  // namespace wpevo::envs
