#include "wpevo/envs/classic_control.hpp"

#include <algorithm>
#include <cmath>

#include "wpevo/errors.hpp"
#include "wpevo/random.hpp"

namespace wpevo::envs {
namespace {

double uniform(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(rng);
}

// Wraps into [lo, hi] by whole periods.
double wrap(double x, double lo, double hi) {
  const double span = hi - lo;
  while (x > hi) x -= span;
  while (x < lo) x += span;
  return x;
}

double angle_normalize(double x) {
  constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
  double shifted = std::fmod(x + 3.14159265358979323846, kTwoPi);
  if (shifted < 0.0) shifted += kTwoPi;
  return shifted - 3.14159265358979323846;
}

}  // namespace

// ---------------------------------------------------------------------------
// CartPole

Observation CartPole::observe() const {
  Observation obs;
  obs.size = 4;
  obs.values = {state_.x, state_.x_dot, state_.theta, state_.theta_dot, 0.0, 0.0};
  return obs;
}

void CartPole::reset_state(std::int64_t seed) {
  Rng rng(static_cast<std::uint64_t>(seed));
  state_.x = uniform(rng, -0.05, 0.05);
  state_.x_dot = uniform(rng, -0.05, 0.05);
  state_.theta = uniform(rng, -0.05, 0.05);
  state_.theta_dot = uniform(rng, -0.05, 0.05);
}

std::pair<double, bool> CartPole::advance(const Action& action) {
  const double force = discrete_index(action, 2) == 1 ? kForce : -kForce;
  const double total_mass = kCartMass + kPoleMass;
  const double pole_mass_length = kPoleMass * kHalfLength;
  const double cos_theta = std::cos(state_.theta);
  const double sin_theta = std::sin(state_.theta);

  const double temp =
      (force + pole_mass_length * state_.theta_dot * state_.theta_dot * sin_theta) / total_mass;
  const double theta_acc =
      (kGravity * sin_theta - cos_theta * temp) /
      (kHalfLength * (4.0 / 3.0 - kPoleMass * cos_theta * cos_theta / total_mass));
  const double x_acc = temp - pole_mass_length * theta_acc * cos_theta / total_mass;

  state_.x = state_.x + kTau * state_.x_dot;
  state_.x_dot = state_.x_dot + kTau * x_acc;
  state_.theta = state_.theta + kTau * state_.theta_dot;
  state_.theta_dot = state_.theta_dot + kTau * theta_acc;

  const bool failed = state_.x < -kXLimit || state_.x > kXLimit || state_.theta < -kThetaLimit ||
                      state_.theta > kThetaLimit;
  return {1.0, failed};
}

// ---------------------------------------------------------------------------
// Pendulum

Observation Pendulum::observe() const {
  Observation obs;
  obs.size = 3;
  obs.values = {std::cos(state_.theta), std::sin(state_.theta), state_.theta_dot, 0.0, 0.0, 0.0};
  return obs;
}

void Pendulum::reset_state(std::int64_t seed) {
  Rng rng(static_cast<std::uint64_t>(seed));
  state_.theta = uniform(rng, -3.14159265358979323846, 3.14159265358979323846);
  state_.theta_dot = uniform(rng, -1.0, 1.0);
}

std::pair<double, bool> Pendulum::advance(const Action& action) {
  const auto* box = std::get_if<BoxAction>(&action);
  if (box == nullptr || box->size != 1) {
    throw ContractViolation("pendulum expects a single-signal box action");
  }
  const double u = box->values[0];
  if (!(u >= -kMaxTorque && u <= kMaxTorque)) {
    throw ContractViolation("pendulum torque outside [-2, 2]");
  }
  const double th = state_.theta;
  const double thdot = state_.theta_dot;
  const double cost = angle_normalize(th) * angle_normalize(th) + 0.1 * thdot * thdot +
                      0.001 * u * u;

  double new_thdot = thdot + (3.0 * kGravity / (2.0 * kLength) * std::sin(th) +
                              3.0 / (kMass * kLength * kLength) * u) *
                                 kDt;
  new_thdot = std::clamp(new_thdot, -kMaxSpeed, kMaxSpeed);
  state_.theta = th + new_thdot * kDt;
  state_.theta_dot = new_thdot;
  return {-cost, false};
}

// ---------------------------------------------------------------------------
// Acrobot

Observation Acrobot::observe() const {
  Observation obs;
  obs.size = 6;
  obs.values = {std::cos(state_.theta1), std::sin(state_.theta1), std::cos(state_.theta2),
                std::sin(state_.theta2), state_.dtheta1,          state_.dtheta2};
  return obs;
}

void Acrobot::reset_state(std::int64_t seed) {
  Rng rng(static_cast<std::uint64_t>(seed));
  state_.theta1 = uniform(rng, -0.1, 0.1);
  state_.theta2 = uniform(rng, -0.1, 0.1);
  state_.dtheta1 = uniform(rng, -0.1, 0.1);
  state_.dtheta2 = uniform(rng, -0.1, 0.1);
}

std::array<double, 4> Acrobot::derivatives(const std::array<double, 4>& s, double torque) {
  const double m1 = kLinkMass1, m2 = kLinkMass2, l1 = kLinkLength1;
  const double lc1 = kLinkCom1, lc2 = kLinkCom2, i1 = kLinkMoi, i2 = kLinkMoi;
  const double theta1 = s[0], theta2 = s[1], dtheta1 = s[2], dtheta2 = s[3];

  const double d1 =
      m1 * lc1 * lc1 + m2 * (l1 * l1 + lc2 * lc2 + 2.0 * l1 * lc2 * std::cos(theta2)) + i1 + i2;
  const double d2 = m2 * (lc2 * lc2 + l1 * lc2 * std::cos(theta2)) + i2;
  const double phi2 = m2 * lc2 * kGravity * std::cos(theta1 + theta2 - kPi / 2.0);
  const double phi1 = -m2 * l1 * lc2 * dtheta2 * dtheta2 * std::sin(theta2) -
                      2.0 * m2 * l1 * lc2 * dtheta2 * dtheta1 * std::sin(theta2) +
                      (m1 * lc1 + m2 * l1) * kGravity * std::cos(theta1 - kPi / 2.0) + phi2;
  const double ddtheta2 =
      (torque + d2 / d1 * phi1 - m2 * l1 * lc2 * dtheta1 * dtheta1 * std::sin(theta2) - phi2) /
      (m2 * lc2 * lc2 + i2 - d2 * d2 / d1);
  const double ddtheta1 = -(d2 * ddtheta2 + phi1) / d1;
  return {dtheta1, dtheta2, ddtheta1, ddtheta2};
}

bool Acrobot::tip_above_bar() const {
  return -std::cos(state_.theta1) - std::cos(state_.theta2 + state_.theta1) > 1.0;
}

std::pair<double, bool> Acrobot::advance(const Action& action) {
  constexpr std::array<double, 3> kTorques{-1.0, 0.0, 1.0};
  const double torque = kTorques[discrete_index(action, 3)];

  const std::array<double, 4> y0{state_.theta1, state_.theta2, state_.dtheta1, state_.dtheta2};
  auto offset = [&](const std::array<double, 4>& k, double h) {
    std::array<double, 4> y{};
    for (std::size_t i = 0; i < 4; ++i) y[i] = y0[i] + h * k[i];
    return y;
  };
  const auto k1 = derivatives(y0, torque);
  const auto k2 = derivatives(offset(k1, kDt / 2.0), torque);
  const auto k3 = derivatives(offset(k2, kDt / 2.0), torque);
  const auto k4 = derivatives(offset(k3, kDt), torque);
  std::array<double, 4> y{};
  for (std::size_t i = 0; i < 4; ++i) {
    y[i] = y0[i] + kDt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }

  state_.theta1 = wrap(y[0], -kPi, kPi);
  state_.theta2 = wrap(y[1], -kPi, kPi);
  state_.dtheta1 = std::clamp(y[2], -kMaxVel1, kMaxVel1);
  state_.dtheta2 = std::clamp(y[3], -kMaxVel2, kMaxVel2);

  const bool terminal = tip_above_bar();
  return {terminal ? 0.0 : -1.0, terminal};
}

// ---------------------------------------------------------------------------
// MountainCar

Observation MountainCar::observe() const {
  Observation obs;
  obs.size = 2;
  obs.values = {state_.position, state_.velocity, 0.0, 0.0, 0.0, 0.0};
  return obs;
}

void MountainCar::reset_state(std::int64_t seed) {
  Rng rng(static_cast<std::uint64_t>(seed));
  state_.position = uniform(rng, -0.6, -0.4);
  state_.velocity = 0.0;
}

std::pair<double, bool> MountainCar::advance(const Action& action) {
  const double push = static_cast<double>(discrete_index(action, 3)) - 1.0;
  double velocity = state_.velocity + push * kForce + std::cos(3.0 * state_.position) * -kGravity;
  velocity = std::clamp(velocity, -kMaxSpeed, kMaxSpeed);
  double position = std::clamp(state_.position + velocity, kMinPosition, kMaxPosition);
  if (position == kMinPosition && velocity < 0.0) velocity = 0.0;
  state_.position = position;
  state_.velocity = velocity;
  return {-1.0, position >= kGoalPosition && velocity >= 0.0};
}

}  // namespace wpevo::envs
