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

#ifndef SSWNP__EXPERIMENTS_HPP_
#define SSWNP__EXPERIMENTS_HPP_

#include "sswnp/config.hpp"
#include "sswnp/evaluation.hpp"

#include <cstdint>
#include <vector>

namespace sswnp
{

/// Agent-level train / held-out split, windowed and optionally normalized.
struct ExperimentData
{
  std::vector<TrajectorySample> train;
  std::vector<TrajectorySample> heldout;
};

ExperimentData prepare_experiment_data(const RunConfig & config, const Scene & corpus);

struct AblationRow
{
  Mode mode{Mode::kFull};
  std::vector<RobustnessReport> per_seed;
  double median_clean_ade{0.0};
  double median_clean_fde{0.0};
  double median_noisy_ade{0.0};
  double median_noisy_fde{0.0};
  double median_ade_degradation{0.0};
  double median_fde_degradation{0.0};
};

struct AblationTable
{
  std::vector<std::uint64_t> seeds;
  double omega_test{0.0};
  std::vector<AblationRow> rows;  // B, B+SC, B+SC+NP

  const AblationRow & row(Mode mode) const;
};

/// Trains every mode on identical data and seeds, then evaluates each model
/// on the held-out split in clean and noisy environments.
AblationTable run_ablation(const RunConfig & base, const Scene & corpus);

struct SweepRow
{
  double omega{0.0};
  std::vector<MetricResult> per_seed;
  double median_ade{0.0};
  double median_fde{0.0};
};

struct SweepTable
{
  std::vector<std::uint64_t> seeds;
  std::vector<SweepRow> rows;
  std::size_t best_index{0};  // argmin of the seed-median ADE

  double best_omega() const { return rows.at(best_index).omega; }
};

/// One model per omega (base mode and lambda), evaluated clean on the
/// held-out split. Requires at least two omegas.
SweepTable noise_factor_sweep(
  const RunConfig & base, const Scene & corpus, const std::vector<double> & omegas);

double median(std::vector<double> values);

}  // namespace sswnp

#endif  // SSWNP__EXPERIMENTS_HPP_
