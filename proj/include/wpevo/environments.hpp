#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "wpevo/genome.hpp"
#include "wpevo/network.hpp"
#include "wpevo/topology.hpp"

namespace wpevo {

enum class TaskId : std::uint8_t { CartPole, Pendulum, Acrobot, MountainCar, AgentOrientation };

inline constexpr std::array<TaskId, 5> kAllTasks{TaskId::CartPole, TaskId::Pendulum,
                                                 TaskId::Acrobot, TaskId::MountainCar,
                                                 TaskId::AgentOrientation};

/// Config/CLI name: cartpole, pendulum, acrobot, mountaincar, orientation.
std::string_view task_name(TaskId id);
/// Throws ConfigError for an unknown name.
TaskId parse_task(std::string_view name);

struct DiscreteActions {
  std::size_t count = 0;
};
struct BoxActions {
  std::vector<Bounds> bounds;
};
using ActionKind = std::variant<DiscreteActions, BoxActions>;

inline constexpr std::size_t kEvalEpisodes = 5;
using EvalSeeds = std::array<std::int64_t, kEvalEpisodes>;

/// Seeds {1, ..., 5} offset from the experiment master seed.
EvalSeeds eval_seeds_for(std::uint64_t master_seed);

struct TaskSpec {
  TaskId id = TaskId::CartPole;
  std::size_t obs_size = 0;
  ActionKind action_kind;
  std::size_t episode_cap = 0;
  double raw_min = 0.0;
  double raw_max = 1.0;
  EvalSeeds eval_seeds{};

  // Throws ConfigError when raw_min >= raw_max or episode_cap == 0.
  void validate() const;
};

/// Default definition of a task: dynamics-defined arity and cap, calibrated raw
/// bounds (see config/tasks.cfg), seeds derived from master_seed.
TaskSpec default_task_spec(TaskId id, std::uint64_t master_seed = 0);

struct Observation {
  std::array<double, kInputSize> values{};
  std::size_t size = 0;

  std::span<const double> view() const { return {values.data(), size}; }
  /// Right-zero-padded to the network input width.
  std::span<const double> padded() const { return {values.data(), kInputSize}; }
  friend bool operator==(const Observation&, const Observation&) = default;
};

struct DiscreteAction {
  std::size_t index = 0;
};
struct BoxAction {
  std::array<double, kOutputSize> values{};
  std::size_t size = 0;
};
using Action = std::variant<DiscreteAction, BoxAction>;

BoxAction box_action(std::span<const double> values);

struct Transition {
  Observation observation;
  double reward = 0.0;
  bool done = false;
};

/// Single-owner mutable task simulator. step() after the episode finished,
/// or with an action of the wrong kind or range, throws ContractViolation.
class Environment {
 public:
  explicit Environment(std::size_t episode_cap) : episode_cap_(episode_cap) {}
  virtual ~Environment() = default;
  Environment(const Environment&) = delete;
  Environment& operator=(const Environment&) = delete;

  Observation reset(std::int64_t seed);
  Transition step(const Action& action);

  virtual TaskId id() const = 0;
  virtual Observation observe() const = 0;

  std::size_t steps() const { return steps_; }
  std::size_t episode_cap() const { return episode_cap_; }
  bool done() const { return done_; }

 protected:
  virtual void reset_state(std::int64_t seed) = 0;
  /// Advances one tick; returns (reward, terminal).
  virtual std::pair<double, bool> advance(const Action& action) = 0;

  std::size_t discrete_index(const Action& action, std::size_t count) const;

 private:
  std::size_t episode_cap_;
  std::size_t steps_ = 0;
  bool done_ = false;
};

std::unique_ptr<Environment> make_environment(const TaskSpec& task);

struct ResetResult {
  std::unique_ptr<Environment> env;
  Observation observation;
};
ResetResult env_reset(const TaskSpec& task, std::int64_t seed);

struct EpisodeResult {
  double raw_return = 0.0;
  std::size_t steps = 0;
  bool terminated_early = false;
  bool failed = false;  // non-finite signal met; caller scores raw_min
};

/// Rolls the policy out from a fresh RnnState until the episode ends.
EpisodeResult run_episode(const RnnParameters& params, const TaskSpec& task, std::int64_t seed);

/// Mean raw return over the task's evaluation seeds; failed episodes count as raw_min.
double mean_raw_return(const RnnParameters& params, const TaskSpec& task);
double mean_raw_return(const Genome& genome, const TaskSpec& task);

/// clamp((raw - raw_min) / (raw_max - raw_min), 0, 1)
double normalize(double raw, const TaskSpec& task);

/// Normalized fitness in [0, 1]; a pure function of (genome, task).
double evaluate(const Genome& genome, const TaskSpec& task);
double evaluate(const Genome& genome, const TaskSpec& task, const Topology& topology);

}  // namespace wpevo
