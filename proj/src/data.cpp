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

#include "sswnp/data.hpp"

#include "sswnp/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>
#include <tuple>

namespace sswnp
{
namespace
{

std::string_view trim(std::string_view s)
{
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line)
{
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
      ++i;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
      ++i;
    }
    if (i > start) {
      fields.push_back(line.substr(start, i - start));
    }
  }
  return fields;
}

bool parse_double(std::string_view text, double & out)
{
  if (!text.empty() && text.front() == '+') {
    text.remove_prefix(1);
  }
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size() && std::isfinite(out);
}

bool parse_integral(std::string_view text, std::int64_t & out)
{
  double v = 0.0;
  if (!parse_double(text, v) || v != std::floor(v) || std::abs(v) > 9.0e15) {
    return false;
  }
  out = static_cast<std::int64_t>(v);
  return true;
}

/// Handles `# key=value` header comments; anything else after '#' is ignored.
void parse_header(
  std::string_view comment, std::size_t line_no, Scene & scene, bool & has_frame_step)
{
  comment = trim(comment.substr(1));
  const auto eq = comment.find('=');
  if (eq == std::string_view::npos) {
    return;
  }
  const auto key = trim(comment.substr(0, eq));
  const auto value = trim(comment.substr(eq + 1));
  if (key == "dt") {
    double dt = 0.0;
    if (!parse_double(value, dt) || dt <= 0.0) {
      throw ParseError(line_no, "invalid dt header '" + std::string(comment) + "'");
    }
    scene.frame_interval_seconds = dt;
  } else if (key == "frame_step") {
    std::int64_t step = 0;
    if (!parse_integral(value, step) || step <= 0) {
      throw ParseError(line_no, "invalid frame_step header '" + std::string(comment) + "'");
    }
    scene.frame_step = step;
    has_frame_step = true;
  }
}

void write_number(std::ostream & out, double v, int precision)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  out << buf;
}

}  // namespace

Scene parse_corpus(std::istream & in, std::string scene_id)
{
  Scene scene;
  scene.scene_id = std::move(scene_id);
  bool has_frame_step = false;

  // agent -> frame -> waypoint; ordered maps give the canonical ordering.
  std::map<std::int64_t, std::map<std::int64_t, Waypoint>> rows;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) {
      continue;
    }
    if (line.front() == '#') {
      parse_header(line, line_no, scene, has_frame_step);
      continue;
    }
    const auto fields = split_fields(line);
    if (fields.size() != 4) {
      throw ParseError(
        line_no, "expected 4 fields, got " + std::to_string(fields.size()) + ": '" +
                   std::string(line) + "'");
    }
    std::int64_t frame = 0;
    std::int64_t agent = 0;
    double x = 0.0;
    double y = 0.0;
    if (!parse_integral(fields[0], frame)) {
      throw ParseError(line_no, "invalid frame '" + std::string(fields[0]) + "'");
    }
    if (!parse_integral(fields[1], agent)) {
      throw ParseError(line_no, "invalid agent id '" + std::string(fields[1]) + "'");
    }
    if (!parse_double(fields[2], x) || !parse_double(fields[3], y)) {
      throw ParseError(line_no, "invalid coordinates: '" + std::string(line) + "'");
    }
    auto [it, inserted] = rows[agent].emplace(frame, Waypoint(x, y));
    if (!inserted) {
      throw ParseError(
        line_no, "duplicate (frame, agent) pair (" + std::to_string(frame) + ", " +
                   std::to_string(agent) + ")");
    }
  }

  std::int64_t min_step = 0;
  for (const auto & [agent, frames] : rows) {
    Trajectory traj;
    traj.agent_id = agent;
    traj.frames.reserve(frames.size());
    traj.waypoints.resize(static_cast<Eigen::Index>(frames.size()), 2);
    Eigen::Index r = 0;
    for (const auto & [frame, wp] : frames) {
      if (!traj.frames.empty()) {
        const std::int64_t d = frame - traj.frames.back();
        min_step = min_step == 0 ? d : std::min(min_step, d);
      }
      traj.frames.push_back(frame);
      traj.waypoints.row(r++) = wp;
    }
    scene.trajectories.push_back(std::move(traj));
  }
  if (!has_frame_step) {
    scene.frame_step = min_step > 0 ? min_step : 1;
  }
  return scene;
}

Scene load_corpus(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open corpus '" + path + "'");
  }
  std::string id = path;
  if (const auto slash = id.find_last_of('/'); slash != std::string::npos) {
    id = id.substr(slash + 1);
  }
  try {
    return parse_corpus(in, id);
  } catch (const ParseError & e) {
    throw ParseError(e.line(), path + ": " + std::string(e.what()));
  }
}

void serialize(const Scene & scene, std::ostream & out, int precision)
{
  out << "# dt=";
  write_number(out, scene.frame_interval_seconds, 17);
  out << "\n# frame_step=" << scene.frame_step << "\n";

  std::vector<std::tuple<std::int64_t, std::int64_t, std::size_t, Eigen::Index>> order;
  for (std::size_t t = 0; t < scene.trajectories.size(); ++t) {
    const auto & traj = scene.trajectories[t];
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(traj.frames.size()); ++i) {
      order.emplace_back(traj.frames[static_cast<std::size_t>(i)], traj.agent_id, t, i);
    }
  }
  std::sort(order.begin(), order.end());
  for (const auto & [frame, agent, t, i] : order) {
    const auto & wp = scene.trajectories[t].waypoints;
    out << frame << ' ' << agent << ' ';
    write_number(out, wp(i, 0), precision);
    out << ' ';
    write_number(out, wp(i, 1), precision);
    out << '\n';
  }
}

void save_corpus(const Scene & scene, const std::string & path, int precision)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot write corpus '" + path + "'");
  }
  serialize(scene, out, precision);
}

std::size_t window_count(std::size_t run_length, int t_obs, int t_fut, int stride)
{
  const auto span = static_cast<std::size_t>(t_obs + t_fut);
  if (run_length < span) {
    return 0;
  }
  return (run_length - span) / static_cast<std::size_t>(stride) + 1;
}

std::vector<TrajectorySample> window(const Scene & scene, int t_obs, int t_fut, int stride)
{
  if (t_obs < 2 || t_fut < 1 || stride < 1) {
    throw ConfigError("window requires t_obs >= 2, t_fut >= 1, stride >= 1");
  }
  const Eigen::Index span = t_obs + t_fut;
  std::vector<TrajectorySample> samples;
  for (const auto & traj : scene.trajectories) {
    const auto n = static_cast<Eigen::Index>(traj.frames.size());
    Eigen::Index run_start = 0;
    for (Eigen::Index i = 1; i <= n; ++i) {
      const bool run_ends =
        i == n || traj.frames[static_cast<std::size_t>(i)] -
                      traj.frames[static_cast<std::size_t>(i - 1)] !=
                    scene.frame_step;
      if (!run_ends) {
        continue;
      }
      for (Eigen::Index s = run_start; s + span <= i; s += stride) {
        TrajectorySample sample;
        sample.observed = traj.waypoints.middleRows(s, t_obs);
        sample.future = traj.waypoints.middleRows(s + t_obs, t_fut);
        sample.agent_id = traj.agent_id;
        sample.scene_id = scene.scene_id;
        sample.start_frame = traj.frames[static_cast<std::size_t>(s)];
        samples.push_back(std::move(sample));
      }
      run_start = i;
    }
  }
  return samples;
}

std::vector<TrajectorySample> window(const Scene & scene, const Horizons & horizons)
{
  return window(scene, horizons.observed, horizons.future, horizons.stride);
}

TrajectorySample normalize(const TrajectorySample & sample)
{
  if (sample.observed.rows() == 0) {
    throw ConfigError("normalize requires a non-empty observed window");
  }
  TrajectorySample out = sample;
  const Waypoint last = sample.observed.row(sample.observed.rows() - 1);
  out.observed.rowwise() -= last;
  out.future.rowwise() -= last;
  out.origin = sample.origin + last;
  return out;
}

TrajectorySample denormalize(const TrajectorySample & sample)
{
  TrajectorySample out = sample;
  out.observed.rowwise() += sample.origin;
  out.future.rowwise() += sample.origin;
  out.origin = Waypoint::Zero();
  return out;
}

std::pair<Scene, Scene> split_agents(const Scene & scene, double holdout_fraction)
{
  if (!(holdout_fraction >= 0.0 && holdout_fraction < 1.0)) {
    throw ConfigError("holdout_fraction must lie in [0, 1)");
  }
  Scene train = scene;
  Scene held = scene;
  train.trajectories.clear();
  held.trajectories.clear();
  const std::size_t n = scene.trajectories.size();
  const auto n_held = static_cast<std::size_t>(std::ceil(holdout_fraction * static_cast<double>(n)));
  for (std::size_t i = 0; i < n; ++i) {
    (i + n_held < n ? train : held).trajectories.push_back(scene.trajectories[i]);
  }
  return {std::move(train), std::move(held)};
}

}  // namespace sswnp
