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

#ifndef SSWNP__DATA_HPP_
#define SSWNP__DATA_HPP_

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace sswnp
{

/// One (x, y) position in meters.
using Waypoint = Eigen::RowVector2d;

/// T x 2 sequence of waypoints, row t = (x_t, y_t). Row-major storage makes
/// the flattened form (x_0, y_0, x_1, y_1, ...) the model input layout.
using WaypointSeq = Eigen::Matrix<double, Eigen::Dynamic, 2, Eigen::RowMajor>;

struct Trajectory
{
  std::int64_t agent_id{0};
  std::vector<std::int64_t> frames;  // strictly increasing
  WaypointSeq waypoints;             // one row per frame
};

struct Scene
{
  std::string scene_id;
  double frame_interval_seconds{0.4};
  /// Frame-number increment between consecutive observations (ETH-UCY uses 10).
  std::int64_t frame_step{1};
  std::vector<Trajectory> trajectories;  // ordered by agent_id
};

struct TrajectorySample
{
  WaypointSeq observed;
  WaypointSeq future;
  std::int64_t agent_id{0};
  std::string scene_id;
  Waypoint origin{Waypoint::Zero()};
  std::int64_t start_frame{0};
};

struct Horizons
{
  int observed{8};
  int future{12};
  int stride{1};
};

/// Parses the 4-column text format: `frame agent_id x y` per line, '#'
/// comments, optional `# dt=<seconds>` and `# frame_step=<n>` headers.
/// Without a frame_step header the step is the smallest positive frame
/// difference found within any agent. Throws ParseError.
Scene parse_corpus(std::istream & in, std::string scene_id = "scene");
Scene load_corpus(const std::string & path);

/// Writes `scene` in the format read by parse_corpus, rows ordered by
/// (frame, agent_id), coordinates at `precision` significant digits.
void serialize(const Scene & scene, std::ostream & out, int precision = 9);
void save_corpus(const Scene & scene, const std::string & path, int precision = 9);

/// Sliding windows of `observed + future` consecutive frames over every
/// gap-free run of every agent.
std::vector<TrajectorySample> window(const Scene & scene, const Horizons & horizons);
std::vector<TrajectorySample> window(const Scene & scene, int t_obs, int t_fut, int stride);

/// Number of windows a gap-free run of `run_length` frames yields.
std::size_t window_count(std::size_t run_length, int t_obs, int t_fut, int stride);

/// Translates so the last observed waypoint sits at the origin.
TrajectorySample normalize(const TrajectorySample & sample);
TrajectorySample denormalize(const TrajectorySample & sample);

/// Deterministic agent-level split: the last ceil(fraction * n) agents (by
/// agent_id) form the held-out scene. Windows from one agent never straddle
/// both halves.
std::pair<Scene, Scene> split_agents(const Scene & scene, double holdout_fraction);

}  // namespace sswnp

#endif  // SSWNP__DATA_HPP_
