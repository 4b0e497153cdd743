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

#ifndef SSWNP__TRAINING_HPP_
#define SSWNP__TRAINING_HPP_

#include "sswnp/config.hpp"
#include "sswnp/data.hpp"
#include "sswnp/graph.hpp"
#include "sswnp/losses.hpp"
#include "sswnp/model.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sswnp
{

struct StepRecord
{
  int epoch{0};
  int step{0};
  double l_sup{0.0};
  double l_ss{0.0};
  double l_total{0.0};
};

struct TrainLog
{
  Mode mode{Mode::kFull};
  double lambda{0.0};
  std::vector<StepRecord> records;
  double wall_seconds{0.0};
  std::string checkpoint_path;
};

/// One mini-batch, both views stacked: rows [0, N) clean, [N, 2N) augmented.
struct Batch
{
  Tensor clean;          // N x 2 t_obs
  Tensor augmented;      // N x 2 t_obs
  Tensor noise;          // N x 2 t_obs, the applied Phi
  Tensor future;         // N x 2 t_fut
  Tensor latents;        // 2N x latent_dim
};

/// Assembles `indices` of `samples` into a batch. Noise for sample j is
/// drawn from the stream (seed, epoch, batch, j) when resampling, else from
/// (seed, j); latents from (seed, epoch, batch, j).
Batch make_batch(
  const std::vector<TrajectorySample> & samples, std::span<const std::size_t> indices,
  const TrainConfig & config, const ModelParams & params, int epoch, int batch_index);

/// Composite objective graph for one batch.
struct StepGraph
{
  Graph graph;
  Graph::Bindings bindings;
  NodeId predictions;  // 2N x 2 t_fut
  NodeId noise_estimates;  // 2N x 2 t_obs
  NodeId l_sup;
  NodeId l_ss;
  NodeId l_total;
};

StepGraph build_step_graph(const ModelParams & params, const Batch & batch, double lambda);

/// Loss breakdown from a forwarded step graph.
LossBreakdown breakdown(const StepGraph & step, const Batch & batch, double lambda);

struct StepInfo
{
  int epoch;
  int step;
  const LossBreakdown & losses;
  const TensorMap & gradients;
};

struct TrainOptions
{
  std::optional<std::string> checkpoint_path;
  std::function<void(const StepInfo &)> on_step;
};

struct TrainResult
{
  ModelParams params;
  TrainLog log;
};

/// Minimizes the mode's objective with Adam over `samples` (already
/// normalized as desired). Deterministic in config.seed. Throws ConfigError
/// for an empty sample set and NumericalError (with the step) for a
/// non-finite loss.
TrainResult train(
  const TrainConfig & config, const std::vector<TrajectorySample> & samples,
  const TrainOptions & options = {});

/// Windows and optionally normalizes `corpus`, then trains.
TrainResult train(
  const TrainConfig & config, const Scene & corpus, const Horizons & horizons, bool normalize,
  const TrainOptions & options = {});

std::vector<TrajectorySample> prepare_samples(
  const Scene & corpus, const Horizons & horizons, bool normalize);

void write_train_log_csv(const TrainLog & log, std::ostream & out);
TrainLog read_train_log_csv(std::istream & in, Mode mode, double lambda);

struct LambdaDiagnostic
{
  std::vector<std::pair<int, double>> curve;  // (step, l_ss)
  std::vector<double> epoch_means;
  /// Fraction of consecutive epoch means that decrease.
  double trend{0.0};
};

/// L_ss convergence curve of a run whose objective included L_ss.
/// Throws ConfigError for modes B and B+SC.
LambdaDiagnostic lambda_diagnostic(const TrainLog & log);

}  // namespace sswnp

#endif  // SSWNP__TRAINING_HPP_
