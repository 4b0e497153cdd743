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

#include "sswnp/experiments.hpp"

#include "sswnp/errors.hpp"
#include "sswnp/training.hpp"

#include <algorithm>

namespace sswnp
{

double median(std::vector<double> values)
{
  if (values.empty()) {
    throw ConfigError("median of an empty set");
  }
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

ExperimentData prepare_experiment_data(const RunConfig & config, const Scene & corpus)
{
  const auto [train_scene, held_scene] = split_agents(corpus, config.holdout_fraction);
  ExperimentData data;
  data.train = prepare_samples(train_scene, config.horizons, config.normalize);
  data.heldout = prepare_samples(held_scene, config.horizons, config.normalize);
  if (data.train.empty() || data.heldout.empty()) {
    throw ConfigError("train/held-out split leaves a side without samples");
  }
  return data;
}

const AblationRow & AblationTable::row(Mode mode) const
{
  for (const auto & r : rows) {
    if (r.mode == mode) {
      return r;
    }
  }
  throw std::out_of_range("mode missing from ablation table");
}

AblationTable run_ablation(const RunConfig & base, const Scene & corpus)
{
  const ExperimentData data = prepare_experiment_data(base, corpus);
  AblationTable table;
  table.seeds = base.seed_list();
  table.omega_test = base.omega_test.value_or(base.train.omega);

  for (Mode mode : kAllModes) {
    AblationRow row;
    row.mode = mode;
    std::vector<double> ca, cf, na, nf, da, df;
    for (std::uint64_t seed : table.seeds) {
      TrainConfig tc = base.train;
      tc.mode = mode;
      tc.seed = seed;
      const TrainResult trained = train(tc, data.train);
      const EvalConfig ec{base.k, table.omega_test, seed};
      RobustnessReport report = evaluate_robustness(trained.params, data.heldout, ec);
      ca.push_back(report.clean.ade);
      cf.push_back(report.clean.fde);
      na.push_back(report.noisy.ade);
      nf.push_back(report.noisy.fde);
      da.push_back(report.ade_degradation);
      df.push_back(report.fde_degradation);
      row.per_seed.push_back(report);
    }
    row.median_clean_ade = median(ca);
    row.median_clean_fde = median(cf);
    row.median_noisy_ade = median(na);
    row.median_noisy_fde = median(nf);
    row.median_ade_degradation = median(da);
    row.median_fde_degradation = median(df);
    table.rows.push_back(std::move(row));
  }
  return table;
}

SweepTable noise_factor_sweep(
  const RunConfig & base, const Scene & corpus, const std::vector<double> & omegas)
{
  if (omegas.size() < 2) {
    throw ConfigError("a noise-factor sweep needs at least two omegas");
  }
  const ExperimentData data = prepare_experiment_data(base, corpus);
  SweepTable table;
  table.seeds = base.seed_list();
  for (double omega : omegas) {
    SweepRow row;
    row.omega = omega;
    std::vector<double> a, f;
    for (std::uint64_t seed : table.seeds) {
      TrainConfig tc = base.train;
      tc.omega = omega;
      tc.seed = seed;
      const TrainResult trained = train(tc, data.train);
      const MetricResult m = evaluate(trained.params, data.heldout, EvalConfig{base.k, 0.0, seed});
      a.push_back(m.ade);
      f.push_back(m.fde);
      row.per_seed.push_back(m);
    }
    row.median_ade = median(a);
    row.median_fde = median(f);
    table.rows.push_back(std::move(row));
  }
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    if (table.rows[i].median_ade < table.rows[table.best_index].median_ade) {
      table.best_index = i;
    }
  }
  return table;
}

}  // namespace sswnp
