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

#ifndef SSWNP__CONFIG_HPP_
#define SSWNP__CONFIG_HPP_

#include "sswnp/data.hpp"
#include "sswnp/model.hpp"
#include "sswnp/synth.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sswnp
{

/// Training objective. B: trajectory loss on the clean view only.
/// B+SC: adds the augmented view (spatial consistency). B+SC+NP: adds the
/// weighted noise-prediction loss.
enum class Mode { kBaseline, kSpatialConsistency, kFull };

Mode parse_mode(std::string_view name);
std::string mode_name(Mode mode);
inline constexpr Mode kAllModes[] = {Mode::kBaseline, Mode::kSpatialConsistency, Mode::kFull};

enum class TrajLossMode { kSingle, kBestOfK };

struct TrainConfig
{
  Mode mode{Mode::kFull};
  double omega{0.05};
  double lambda{0.01};
  int epochs{50};
  int batch_size{32};
  double learning_rate{1e-3};
  std::uint64_t seed{1};
  bool resample_noise{true};
  TrajLossMode traj_loss{TrajLossMode::kSingle};
  int train_k{5};
  ArchConfig arch;

  /// Noise factor actually applied: mode B never perturbs its input.
  double effective_omega() const { return mode == Mode::kBaseline ? 0.0 : omega; }
  /// Weight actually applied to L_ss: only B+SC+NP optimizes it.
  double effective_lambda() const { return mode == Mode::kFull ? lambda : 0.0; }
};

void validate(const TrainConfig & config);

struct EvalConfig
{
  int k{20};
  double omega_test{0.0};
  std::uint64_t seed{1};
};

/// Everything a CLI run needs, resolved from key = value text.
struct RunConfig
{
  std::string data;  // corpus path; empty selects the synthetic generator
  SynthSpec synth;
  Horizons horizons;
  bool normalize{true};
  double holdout_fraction{0.2};
  TrainConfig train;
  int k{20};
  std::optional<double> omega_test;  // nullopt: use the training omega
  std::string eval_split{"heldout"};
  std::string checkpoint;
  std::string train_log;
  std::vector<std::uint64_t> seeds;  // empty: {train.seed}
  std::vector<double> sweep_omegas{0.0, 0.01, 0.05, 0.1, 0.5};
  double grad_check_h{1e-5};
  double grad_check_tol{1e-5};
  int grad_check_batch{4};
  int grad_check_graphs{1};
  bool grad_check_random_widths{false};

  EvalConfig eval_config() const;
  std::vector<std::uint64_t> seed_list() const;
};

/// Raw key -> value text with every known key present (defaults filled in).
class KeyValueConfig
{
public:
  KeyValueConfig();

  /// Parses `key = value` lines; '#' starts a comment. Unknown keys throw
  /// ConfigError. Run manifests are accepted too: their `command=` and
  /// `sha256` lines are skipped.
  void merge_text(std::istream & in, const std::string & origin);
  void merge_file(const std::string & path);

  /// Single override; unknown keys throw ConfigError.
  void set(const std::string & key, const std::string & value);

  const std::string & get(std::string_view key) const;
  const std::map<std::string, std::string, std::less<>> & values() const { return values_; }

  /// Effective configuration as sorted `key=value` lines.
  void write(std::ostream & out) const;

  RunConfig resolve() const;

private:
  std::map<std::string, std::string, std::less<>> values_;
};

/// Comma-separated list parsing helpers shared with the CLI.
std::vector<double> parse_double_list(std::string_view text, std::string_view key);
std::vector<int> parse_int_list(std::string_view text, std::string_view key);

}  // namespace sswnp

#endif  // SSWNP__CONFIG_HPP_
