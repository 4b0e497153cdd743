// Copyright 2026 The sswnp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sswnp/synth.hpp"

#include "sswnp/errors.hpp"
#include "sswnp/rng.hpp"

#include <cmath>
#include <numbers>

namespace sswnp
{
namespace
{

Waypoint direction(double angle) { return {std::cos(angle), std::sin(angle)}; }

void check_range(const Range & r, const char * name)
{
  if (!(r.min <= r.max) || !std::isfinite(r.min) || !std::isfinite(r.max)) {
    throw ConfigError(std::string("synth range '") + name + "' is empty or non-finite");
  }
}

double draw(RngStream & rng, const Range & r) { return rng.uniform(r.min, r.max); }

}  // namespace

Family parse_family(std::string_view name)
{
  if (name == "constant-velocity") return Family::kConstantVelocity;
  if (name == "constant-turn-rate") return Family::kConstantTurnRate;
  if (name == "sinusoidal-lane-change") return Family::kSinusoidalLaneChange;
  if (name == "piecewise-goal") return Family::kPiecewiseGoal;
  throw ConfigError("unknown synth family '" + std::string(name) + "'");
}

std::string family_name(Family family)
{
  switch (family) {
    case Family::kConstantVelocity:
      return "constant-velocity";
    case Family::kConstantTurnRate:
      return "constant-turn-rate";
    case Family::kSinusoidalLaneChange:
      return "sinusoidal-lane-change";
    case Family::kPiecewiseGoal:
      return "piecewise-goal";
  }
  return "unknown";
}

void validate(const SynthSpec & spec)
{
  if (spec.agents <= 0 || spec.steps <= 0) {
    throw ConfigError("synth agent and step counts must be positive");
  }
  if (!(spec.dt > 0.0)) {
    throw ConfigError("synth dt must be positive");
  }
  if (spec.goals < 2 || spec.goals > 3) {
    throw ConfigError("synth goals must be 2 or 3");
  }
  if (!(spec.position_noise >= 0.0) || !(spec.start_extent >= 0.0) || !(spec.goal_distance > 0.0)) {
    throw ConfigError("synth position_noise, start_extent must be >= 0 and goal_distance > 0");
  }
  check_range(spec.heading, "heading");
  check_range(spec.speed, "speed");
  check_range(spec.turn_rate, "turn_rate");
  check_range(spec.amplitude, "amplitude");
  check_range(spec.period, "period");
  check_range(spec.branch, "branch");
  if (spec.period.min <= 0.0) {
    throw ConfigError("synth period must be positive");
  }
}

WaypointSeq constant_velocity(const Waypoint & start, const Waypoint & velocity, double dt, int steps)
{
  WaypointSeq out(steps, 2);
  for (int t = 0; t < steps; ++t) {
    out.row(t) = start + velocity * (t * dt);
  }
  return out;
}

WaypointSeq constant_turn_rate(
  const Waypoint & start, double heading, double speed, double turn_rate, double dt, int steps)
{
  if (turn_rate == 0.0) {
    return constant_velocity(start, speed * direction(heading), dt, steps);
  }
  const double radius = speed / turn_rate;
  WaypointSeq out(steps, 2);
  for (int t = 0; t < steps; ++t) {
    const double angle = heading + turn_rate * t * dt;
    out(t, 0) = start.x() + radius * (std::sin(angle) - std::sin(heading));
    out(t, 1) = start.y() - radius * (std::cos(angle) - std::cos(heading));
  }
  return out;
}

WaypointSeq sinusoidal_lane_change(
  const Waypoint & start, double heading, double speed, double amplitude, double period,
  double dt, int steps)
{
  const Waypoint forward = direction(heading);
  const Waypoint lateral(-forward.y(), forward.x());
  WaypointSeq out(steps, 2);
  for (int t = 0; t < steps; ++t) {
    const double time = t * dt;
    out.row(t) = start + forward * (speed * time) +
                 lateral * (amplitude * std::sin(2.0 * std::numbers::pi * time / period));
  }
  return out;
}

WaypointSeq piecewise_goal(
  const Waypoint & start, double heading, double speed, double branch_time, double goal_offset,
  double goal_distance, double dt, int steps)
{
  const Waypoint before = direction(heading);
  const Waypoint after = direction(heading + goal_offset);
  const Waypoint branch_point = start + before * (speed * branch_time);
  WaypointSeq out(steps, 2);
  for (int t = 0; t < steps; ++t) {
    const double time = t * dt;
    if (time <= branch_time) {
      out.row(t) = start + before * (speed * time);
    } else {
      out.row(t) = branch_point + after * std::min(speed * (time - branch_time), goal_distance);
    }
  }
  return out;
}

Scene generate(const SynthSpec & spec)
{
  validate(spec);
  Scene scene;
  scene.scene_id = "synth-" + family_name(spec.family);
  scene.frame_interval_seconds = spec.dt;
  scene.frame_step = 1;
  const double duration = (spec.steps - 1) * spec.dt;

  for (int agent = 0; agent < spec.agents; ++agent) {
    RngStream rng = RngStream::keyed({spec.seed, static_cast<std::uint64_t>(agent), label_key("synth")});
    const Waypoint start(
      rng.uniform(-spec.start_extent, spec.start_extent),
      rng.uniform(-spec.start_extent, spec.start_extent));
    const double heading = draw(rng, spec.heading);
    const double speed = draw(rng, spec.speed);

    Trajectory traj;
    traj.agent_id = agent;
    switch (spec.family) {
      case Family::kConstantVelocity:
        traj.waypoints = constant_velocity(start, speed * direction(heading), spec.dt, spec.steps);
        break;
      case Family::kConstantTurnRate:
        traj.waypoints =
          constant_turn_rate(start, heading, speed, draw(rng, spec.turn_rate), spec.dt, spec.steps);
        break;
      case Family::kSinusoidalLaneChange: {
        const double amplitude = draw(rng, spec.amplitude);
        const double period = draw(rng, spec.period);
        traj.waypoints =
          sinusoidal_lane_change(start, heading, speed, amplitude, period, spec.dt, spec.steps);
        break;
      }
      case Family::kPiecewiseGoal: {
        const double branch_time = draw(rng, spec.branch) * duration;
        const auto goal = static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.goals)));
        // Goal directions are spread symmetrically around the initial heading.
        const double offset = (goal - 0.5 * (spec.goals - 1)) * spec.goal_angle;
        traj.waypoints = piecewise_goal(
          start, heading, speed, branch_time, offset, spec.goal_distance, spec.dt, spec.steps);
        break;
      }
    }
    if (spec.position_noise > 0.0) {
      RngStream noise = RngStream::keyed({spec.seed, static_cast<std::uint64_t>(agent), label_key("position-noise")});
      for (Eigen::Index t = 0; t < traj.waypoints.rows(); ++t) {
        traj.waypoints(t, 0) += spec.position_noise * noise.normal();
        traj.waypoints(t, 1) += spec.position_noise * noise.normal();
      }
    }
    traj.frames.resize(static_cast<std::size_t>(spec.steps));
    for (int t = 0; t < spec.steps; ++t) {
      traj.frames[static_cast<std::size_t>(t)] = t;
    }
    scene.trajectories.push_back(std::move(traj));
  }
  return scene;
}

WaypointSeq linear_extrapolation_oracle(const TrajectorySample & sample, int t_fut)
{
  const Eigen::Index n = sample.observed.rows();
  if (n < 2) {
    throw ConfigError("linear extrapolation needs at least 2 observed waypoints");
  }
  const Waypoint last = sample.observed.row(n - 1);
  const Waypoint step = last - sample.observed.row(n - 2);
  WaypointSeq out(t_fut, 2);
  for (int t = 0; t < t_fut; ++t) {
    out.row(t) = last + step * static_cast<double>(t + 1);
  }
  return out;
}

}  // namespace sswnp
