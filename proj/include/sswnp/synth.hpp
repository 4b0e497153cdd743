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

#ifndef SSWNP__SYNTH_HPP_
#define SSWNP__SYNTH_HPP_

#include "sswnp/data.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace sswnp
{

enum class Family {
  kConstantVelocity,
  kConstantTurnRate,
  kSinusoidalLaneChange,
  kPiecewiseGoal,
};

Family parse_family(std::string_view name);
std::string family_name(Family family);

struct Range
{
  double min{0.0};
  double max{0.0};
};

/// Parameters of a synthetic corpus. Every agent draws its own parameters
/// uniformly from the ranges, from a stream keyed by (seed, agent index).
struct SynthSpec
{
  Family family{Family::kConstantVelocity};
  int agents{64};
  int steps{40};
  double dt{0.4};
  double start_extent{10.0};  // start positions uniform in [-e, e]^2
  Range heading{0.0, 6.283185307179586};
  Range speed{0.8, 1.6};
  Range turn_rate{-0.5, 0.5};   // rad/s
  Range amplitude{0.3, 1.0};    // lateral meters
  Range period{3.0, 6.0};       // seconds
  int goals{3};
  double goal_angle{1.0471975511965976};  // radians between adjacent goal directions
  double goal_distance{50.0};             // meters from branch point to goal
  Range branch{0.3, 0.7};                 // branch time as a fraction of the duration
  double position_noise{0.0};             // std of i.i.d. Gaussian added to positions
  std::uint64_t seed{0};
};

void validate(const SynthSpec & spec);

Scene generate(const SynthSpec & spec);

/// x_t = start + velocity * t * dt for t = 0 .. steps-1.
WaypointSeq constant_velocity(const Waypoint & start, const Waypoint & velocity, double dt, int steps);

/// Circular arc of radius speed / turn_rate starting at `start` with `heading`.
WaypointSeq constant_turn_rate(
  const Waypoint & start, double heading, double speed, double turn_rate, double dt, int steps);

/// Forward motion along `heading` plus a lateral sinusoid amplitude*sin(2*pi*t/period).
WaypointSeq sinusoidal_lane_change(
  const Waypoint & start, double heading, double speed, double amplitude, double period,
  double dt, int steps);

/// Straight motion until `branch_time`, then straight toward the goal at
/// `goal_distance` along heading + goal_offset, halting on arrival.
WaypointSeq piecewise_goal(
  const Waypoint & start, double heading, double speed, double branch_time, double goal_offset,
  double goal_distance, double dt, int steps);

/// Extends the last observed displacement for `t_fut` steps.
WaypointSeq linear_extrapolation_oracle(const TrajectorySample & sample, int t_fut);

}  // namespace sswnp

#endif  // SSWNP__SYNTH_HPP_
