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

#include "sswnp/config.hpp"

#include "sswnp/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <utility>

namespace sswnp
{
namespace
{

constexpr std::pair<const char *, const char *> kDefaults[] = {
  {"data", ""},
  {"holdout_fraction", "0.2"},
  {"t_obs", "8"},
  {"t_fut", "12"},
  {"stride", "1"},
  {"normalize", "true"},
  {"synth.family", "constant-velocity"},
  {"synth.agents", "64"},
  {"synth.steps", "40"},
  {"synth.dt", "0.4"},
  {"synth.start_extent", "10"},
  {"synth.heading_min", "0"},
  {"synth.heading_max", "6.283185307179586"},
  {"synth.speed_min", "0.8"},
  {"synth.speed_max", "1.6"},
  {"synth.turn_rate_min", "-0.5"},
  {"synth.turn_rate_max", "0.5"},
  {"synth.amplitude_min", "0.3"},
  {"synth.amplitude_max", "1.0"},
  {"synth.period_min", "3"},
  {"synth.period_max", "6"},
  {"synth.goals", "3"},
  {"synth.goal_angle", "1.0471975511965976"},
  {"synth.goal_distance", "50"},
  {"synth.branch_min", "0.3"},
  {"synth.branch_max", "0.7"},
  {"synth.position_noise", "0"},
  {"synth.seed", "0"},
  {"mode", "B+SC+NP"},
  {"omega", "0.05"},
  {"lambda", "0.01"},
  {"epochs", "50"},
  {"batch_size", "32"},
  {"learning_rate", "0.001"},
  {"seed", "1"},
  {"resample_noise", "true"},
  {"traj_loss", "single"},
  {"train_k", "5"},
  {"feature_dim", "32"},
  {"fe_hidden", "64,64"},
  {"sup_hidden", "64,64"},
  {"ss_hidden", "128,64"},
  {"latent_dim", "8"},
  {"latent_std", "1"},
  {"activation", "tanh"},
  {"k", "20"},
  {"omega_test", "train"},
  {"eval_split", "heldout"},
  {"checkpoint", ""},
  {"train_log", ""},
  {"seeds", ""},
  {"sweep_omegas", "0,0.01,0.05,0.1,0.5"},
  {"grad_check.h", "1e-5"},
  {"grad_check.tol", "1e-5"},
  {"grad_check.batch", "4"},
  {"grad_check.graphs", "1"},
  {"grad_check.random_widths", "false"},
};

std::string_view trim(std::string_view s)
{
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view text, std::string_view key)
{
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError("'" + std::string(key) + "' expects a number, got '" + std::string(text) + "'");
  }
  return v;
}

long long to_int(std::string_view text, std::string_view key)
{
  text = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("'" + std::string(key) + "' expects an integer, got '" + std::string(text) + "'");
  }
  return v;
}

std::uint64_t to_u64(std::string_view text, std::string_view key)
{
  text = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("'" + std::string(key) + "' expects a non-negative integer, got '" + std::string(text) + "'");
  }
  return v;
}

bool to_bool(std::string_view text, std::string_view key)
{
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("'" + std::string(key) + "' expects true/false, got '" + std::string(text) + "'");
}

template <typename F>
auto split_list(std::string_view text, std::string_view key, F convert)
{
  std::vector<decltype(convert(text, key))> out;
  text = trim(text);
  if (text.empty()) {
    return out;
  }
  std::size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    out.push_back(convert(text.substr(pos, comma - pos), key));
    if (comma == std::string_view::npos) {
      break;
    }
    pos = comma + 1;
  }
  return out;
}

}  // namespace

Mode parse_mode(std::string_view name)
{
  if (name == "B") return Mode::kBaseline;
  if (name == "B+SC") return Mode::kSpatialConsistency;
  if (name == "B+SC+NP") return Mode::kFull;
  throw ConfigError("unknown mode '" + std::string(name) + "' (expected B, B+SC or B+SC+NP)");
}

std::string mode_name(Mode mode)
{
  switch (mode) {
    case Mode::kBaseline:
      return "B";
    case Mode::kSpatialConsistency:
      return "B+SC";
    case Mode::kFull:
      return "B+SC+NP";
  }
  return "?";
}

void validate(const TrainConfig & config)
{
  if (!(config.omega >= 0.0) || !(config.lambda >= 0.0)) {
    throw ConfigError("omega and lambda must be >= 0");
  }
  if (config.epochs < 1 || config.batch_size < 1) {
    throw ConfigError("epochs and batch_size must be >= 1");
  }
  if (!(config.learning_rate > 0.0)) {
    throw ConfigError("learning_rate must be positive");
  }
  if (config.train_k < 1) {
    throw ConfigError("train_k must be >= 1");
  }
  validate(config.arch);
}

std::vector<double> parse_double_list(std::string_view text, std::string_view key)
{
  return split_list(text, key, to_double);
}

std::vector<int> parse_int_list(std::string_view text, std::string_view key)
{
  return split_list(text, key, [](std::string_view t, std::string_view k) {
    return static_cast<int>(to_int(t, k));
  });
}

EvalConfig RunConfig::eval_config() const
{
  return {k, omega_test.value_or(train.omega), train.seed};
}

std::vector<std::uint64_t> RunConfig::seed_list() const
{
  return seeds.empty() ? std::vector<std::uint64_t>{train.seed} : seeds;
}

KeyValueConfig::KeyValueConfig()
{
  for (const auto & [key, value] : kDefaults) {
    values_.emplace(key, value);
  }
}

void KeyValueConfig::merge_text(std::istream & in, const std::string & origin)
{
  std::string raw;
  std::size_t line_no = 0;
  bool manifest = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    // A '#' preceded by whitespace starts a trailing comment.
    for (std::size_t pos = 1; pos < line.size(); ++pos) {
      if (line[pos] == '#' && (line[pos - 1] == ' ' || line[pos - 1] == '\t')) {
        line = trim(line.substr(0, pos));
        break;
      }
    }
    if (line_no == 1 && line == "# sswnp run manifest") {
      manifest = true;
    }
    if (line.empty() || line.front() == '#') {
      continue;
    }
    if (manifest && line.rfind("sha256 ", 0) == 0) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (manifest && key == "command") {
      continue;
    }
    if (!values_.contains(key)) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    values_[key] = value;
  }
}

void KeyValueConfig::merge_file(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config '" + path + "'");
  }
  merge_text(in, path);
}

void KeyValueConfig::set(const std::string & key, const std::string & value)
{
  auto it = values_.find(key);
  if (it == values_.end()) {
    throw ConfigError("unknown key '" + key + "'");
  }
  it->second = std::string(trim(value));
}

const std::string & KeyValueConfig::get(std::string_view key) const
{
  auto it = values_.find(key);
  if (it == values_.end()) {
    throw ConfigError("unknown key '" + std::string(key) + "'");
  }
  return it->second;
}

void KeyValueConfig::write(std::ostream & out) const
{
  for (const auto & [key, value] : values_) {
    out << key << "=" << value << "\n";
  }
}

RunConfig KeyValueConfig::resolve() const
{
  RunConfig rc;
  auto d = [this](const char * key) { return to_double(get(key), key); };
  auto i = [this](const char * key) { return static_cast<int>(to_int(get(key), key)); };

  rc.data = get("data");
  rc.holdout_fraction = d("holdout_fraction");
  rc.horizons = {i("t_obs"), i("t_fut"), i("stride")};
  rc.normalize = to_bool(get("normalize"), "normalize");

  SynthSpec & s = rc.synth;
  s.family = parse_family(get("synth.family"));
  s.agents = i("synth.agents");
  s.steps = i("synth.steps");
  s.dt = d("synth.dt");
  s.start_extent = d("synth.start_extent");
  s.heading = {d("synth.heading_min"), d("synth.heading_max")};
  s.speed = {d("synth.speed_min"), d("synth.speed_max")};
  s.turn_rate = {d("synth.turn_rate_min"), d("synth.turn_rate_max")};
  s.amplitude = {d("synth.amplitude_min"), d("synth.amplitude_max")};
  s.period = {d("synth.period_min"), d("synth.period_max")};
  s.goals = i("synth.goals");
  s.goal_angle = d("synth.goal_angle");
  s.goal_distance = d("synth.goal_distance");
  s.branch = {d("synth.branch_min"), d("synth.branch_max")};
  s.position_noise = d("synth.position_noise");
  s.seed = to_u64(get("synth.seed"), "synth.seed");

  TrainConfig & t = rc.train;
  t.mode = parse_mode(get("mode"));
  t.omega = d("omega");
  t.lambda = d("lambda");
  t.epochs = i("epochs");
  t.batch_size = i("batch_size");
  t.learning_rate = d("learning_rate");
  t.seed = to_u64(get("seed"), "seed");
  t.resample_noise = to_bool(get("resample_noise"), "resample_noise");
  const std::string & tl = get("traj_loss");
  if (tl == "single") {
    t.traj_loss = TrajLossMode::kSingle;
  } else if (tl == "best_of_k") {
    t.traj_loss = TrajLossMode::kBestOfK;
  } else {
    throw ConfigError("traj_loss must be 'single' or 'best_of_k'");
  }
  t.train_k = i("train_k");
  t.arch.t_obs = rc.horizons.observed;
  t.arch.t_fut = rc.horizons.future;
  t.arch.feature_dim = i("feature_dim");
  t.arch.fe_hidden = parse_int_list(get("fe_hidden"), "fe_hidden");
  t.arch.sup_hidden = parse_int_list(get("sup_hidden"), "sup_hidden");
  t.arch.ss_hidden = parse_int_list(get("ss_hidden"), "ss_hidden");
  t.arch.latent_dim = i("latent_dim");
  t.arch.latent_std = d("latent_std");
  t.arch.activation = parse_activation(get("activation"));

  rc.k = i("k");
  if (get("omega_test") != "train") {
    rc.omega_test = d("omega_test");
    if (*rc.omega_test < 0.0) {
      throw ConfigError("omega_test must be >= 0");
    }
  }
  rc.eval_split = get("eval_split");
  if (rc.eval_split != "heldout" && rc.eval_split != "train" && rc.eval_split != "all") {
    throw ConfigError("eval_split must be heldout, train or all");
  }
  rc.checkpoint = get("checkpoint");
  rc.train_log = get("train_log");
  for (const auto & seed : split_list(get("seeds"), "seeds", to_u64)) {
    rc.seeds.push_back(seed);
  }
  rc.sweep_omegas = parse_double_list(get("sweep_omegas"), "sweep_omegas");
  rc.grad_check_h = d("grad_check.h");
  rc.grad_check_tol = d("grad_check.tol");
  rc.grad_check_batch = i("grad_check.batch");
  rc.grad_check_graphs = i("grad_check.graphs");
  rc.grad_check_random_widths = to_bool(get("grad_check.random_widths"), "grad_check.random_widths");

  if (rc.horizons.observed < 2 || rc.horizons.future < 1 || rc.horizons.stride < 1) {
    throw ConfigError("t_obs >= 2, t_fut >= 1 and stride >= 1 are required");
  }
  if (rc.k < 1) {
    throw ConfigError("k must be >= 1");
  }
  if (rc.grad_check_batch < 1 || rc.grad_check_graphs < 1 || !(rc.grad_check_h > 0.0)) {
    throw ConfigError("grad_check.batch, grad_check.graphs and grad_check.h must be positive");
  }
  validate(rc.synth);
  validate(rc.train);
  return rc;
}

}  // namespace sswnp
