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

#include "sswnp/step_check.hpp"

#include "sswnp/training.hpp"

#include <numeric>

namespace sswnp
{

namespace
{

std::vector<int> random_hidden(RngStream & rng)
{
  std::vector<int> hidden(1 + rng.below(2));
  for (int & width : hidden) {
    width = 4 + static_cast<int>(rng.below(13));
  }
  return hidden;
}

}  // namespace

StepCheckCase random_step_case(
  const ArchConfig & arch, int max_batch, std::uint64_t seed, bool random_widths)
{
  RngStream rng = RngStream::keyed({seed, label_key("step-case")});
  StepCheckCase c;
  c.seed = seed;
  c.config.arch = arch;
  if (random_widths) {
    c.config.arch.feature_dim = 4 + static_cast<int>(rng.below(13));
    c.config.arch.latent_dim = static_cast<int>(rng.below(5));
    c.config.arch.fe_hidden = random_hidden(rng);
    c.config.arch.sup_hidden = random_hidden(rng);
    c.config.arch.ss_hidden = random_hidden(rng);
  }
  c.config.seed = seed;
  c.config.mode = kAllModes[rng.below(3)];
  c.config.omega = rng.uniform(0.0, 0.5);
  c.config.lambda = rng.uniform(0.0, 1.0);
  c.config.traj_loss = rng.below(2) == 0 ? TrajLossMode::kSingle : TrajLossMode::kBestOfK;
  c.config.train_k = 1 + static_cast<int>(rng.below(4));
  c.batch = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_batch)));
  return c;
}

GradCheckReport check_step_gradients(const StepCheckCase & step_case, double h, double tol)
{
  const ArchConfig & arch = step_case.config.arch;
  const ModelParams params = init_params(arch, step_case.seed);

  RngStream rng = RngStream::keyed({step_case.seed, label_key("step-data")});
  std::vector<TrajectorySample> samples(static_cast<std::size_t>(step_case.batch));
  for (auto & s : samples) {
    s.observed.resize(arch.t_obs, 2);
    s.future.resize(arch.t_fut, 2);
    for (Eigen::Index i = 0; i < s.observed.size(); ++i) s.observed.data()[i] = rng.uniform(-1, 1);
    for (Eigen::Index i = 0; i < s.future.size(); ++i) s.future.data()[i] = rng.uniform(-1, 1);
  }
  std::vector<std::size_t> indices(samples.size());
  std::iota(indices.begin(), indices.end(), std::size_t{0});

  const Batch batch = make_batch(samples, indices, step_case.config, params, 0, 0);
  StepGraph step = build_step_graph(params, batch, step_case.config.effective_lambda());
  return grad_check_extended<long double>(step.graph, step.bindings, h, tol);
}

}  // namespace sswnp
