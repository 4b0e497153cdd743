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

#include "sswnp/training.hpp"

#include "sswnp/adam.hpp"
#include "sswnp/augment.hpp"
#include "sswnp/checkpoint.hpp"
#include "sswnp/errors.hpp"
#include "sswnp/rng.hpp"

#include <chrono>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace sswnp
{
namespace
{

constexpr std::uint64_t kNoiseLabel = label_key("train-noise");
constexpr std::uint64_t kLatentLabel = label_key("train-latent");
constexpr std::uint64_t kShuffleLabel = label_key("shuffle");

std::vector<std::size_t> epoch_order(std::size_t n, std::uint64_t seed, int epoch)
{
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  RngStream rng = RngStream::keyed({seed, kShuffleLabel, static_cast<std::uint64_t>(epoch)});
  for (std::size_t i = n; i > 1; --i) {
    std::swap(order[i - 1], order[rng.below(i)]);
  }
  return order;
}

/// Index of the candidate future (row of `decoded`) closest to `gt` in L_tp.
Eigen::Index best_candidate(const Tensor & decoded, const Tensor & gt_row)
{
  Eigen::Index best = 0;
  (decoded.rowwise() - gt_row.row(0)).rowwise().squaredNorm().minCoeff(&best);
  return best;
}

std::string format17(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::vector<TrajectorySample> prepare_samples(
  const Scene & corpus, const Horizons & horizons, bool normalize_samples)
{
  std::vector<TrajectorySample> samples = window(corpus, horizons);
  if (normalize_samples) {
    for (auto & s : samples) {
      s = normalize(s);
    }
  }
  return samples;
}

Batch make_batch(
  const std::vector<TrajectorySample> & samples, std::span<const std::size_t> indices,
  const TrainConfig & config, const ModelParams & params, int epoch, int batch_index)
{
  const ArchConfig & arch = config.arch;
  const auto n = static_cast<Eigen::Index>(indices.size());
  Batch batch;
  batch.clean.resize(n, 2 * arch.t_obs);
  batch.augmented.resize(n, 2 * arch.t_obs);
  batch.noise.resize(n, 2 * arch.t_obs);
  batch.future.resize(n, 2 * arch.t_fut);
  batch.latents.resize(2 * n, arch.latent_dim);

  const double omega = config.effective_omega();
  const auto e = static_cast<std::uint64_t>(epoch);
  const auto b = static_cast<std::uint64_t>(batch_index);

  for (Eigen::Index r = 0; r < n; ++r) {
    const std::size_t j = indices[static_cast<std::size_t>(r)];
    const TrajectorySample & sample = samples[j];
    if (sample.observed.rows() != arch.t_obs || sample.future.rows() != arch.t_fut) {
      throw ShapeError("sample horizons do not match the architecture");
    }
    RngStream noise_rng = config.resample_noise
                            ? RngStream::keyed({config.seed, kNoiseLabel, e, b, j})
                            : RngStream::keyed({config.seed, kNoiseLabel, j});
    const ViewPair views = make_views(sample.observed, sample_noise(arch.t_obs, omega, noise_rng));
    batch.clean.row(r) = flatten(views.clean);
    batch.augmented.row(r) = flatten(views.augmented);
    batch.noise.row(r) = flatten(views.noise.scaled);
    batch.future.row(r) = flatten(sample.future);
  }

  if (arch.latent_dim == 0) {
    return batch;
  }
  if (config.traj_loss == TrajLossMode::kSingle) {
    for (Eigen::Index r = 0; r < n; ++r) {
      const std::size_t j = indices[static_cast<std::size_t>(r)];
      RngStream latent_rng = RngStream::keyed({config.seed, kLatentLabel, e, b, j});
      const Tensor z = draw_latents(arch, 1, latent_rng);
      // Both views of an agent share its latent draw.
      batch.latents.row(r) = z.row(0);
      batch.latents.row(n + r) = z.row(0);
    }
    return batch;
  }

  // Best-of-K: pick, per agent and view, the candidate latent whose decoded
  // future is closest to the ground truth under the current parameters.
  const Tensor features_clean = encode_batch(params, batch.clean);
  const Tensor features_aug = encode_batch(params, batch.augmented);
  for (Eigen::Index r = 0; r < n; ++r) {
    const std::size_t j = indices[static_cast<std::size_t>(r)];
    RngStream latent_rng = RngStream::keyed({config.seed, kLatentLabel, e, b, j});
    const Tensor candidates = draw_latents(arch, config.train_k, latent_rng);
    const Tensor gt = batch.future.row(r);
    const Tensor dec_clean =
      decode_batch(params, features_clean.row(r).replicate(config.train_k, 1), candidates);
    const Tensor dec_aug =
      decode_batch(params, features_aug.row(r).replicate(config.train_k, 1), candidates);
    batch.latents.row(r) = candidates.row(best_candidate(dec_clean, gt));
    batch.latents.row(n + r) = candidates.row(best_candidate(dec_aug, gt));
  }
  return batch;
}

StepGraph build_step_graph(const ModelParams & params, const Batch & batch, double lambda)
{
  if (params.ss.empty()) {
    throw ConfigError("training requires noise-prediction parameters");
  }
  const Activation act = params.arch.activation;
  const Eigen::Index n = batch.clean.rows();

  StepGraph step;
  Graph & g = step.graph;
  const NodeId clean = g.input("clean");
  const NodeId augmented = g.input("augmented");
  const NodeId views = g.concat(clean, augmented, Axis::kRows);
  const NodeId features = mlp_node(g, views, params.fe, "fe", act, true);

  NodeId decoder_input = features;
  if (params.arch.latent_dim > 0) {
    decoder_input = g.concat(features, g.input("latents"), Axis::kCols);
  }
  step.predictions = mlp_node(g, decoder_input, params.sup, "sup", act, false);
  step.l_sup = supervised_loss_node(g, step.predictions, g.input("future_target"));

  step.noise_estimates = mlp_node(g, features, params.ss, "ss", act, false);
  step.l_ss = self_supervised_loss_node(g, step.noise_estimates, g.input("noise_target"));

  step.l_total = total_loss_node(g, step.l_sup, step.l_ss, lambda);
  g.set_output(step.l_total);

  step.bindings.emplace("clean", batch.clean);
  step.bindings.emplace("augmented", batch.augmented);
  if (params.arch.latent_dim > 0) {
    step.bindings.emplace("latents", batch.latents);
  }
  Tensor future_target(2 * n, batch.future.cols());
  future_target << batch.future, batch.future;
  step.bindings.emplace("future_target", std::move(future_target));
  Tensor noise_target(2 * n, batch.noise.cols());
  noise_target << Tensor::Zero(n, batch.noise.cols()), batch.noise;
  step.bindings.emplace("noise_target", std::move(noise_target));
  return step;
}

LossBreakdown breakdown(const StepGraph & step, const Batch & batch, double lambda)
{
  const Eigen::Index n = batch.clean.rows();
  const Tensor & pred = step.graph.value(step.predictions);
  const Tensor & noise = step.graph.value(step.noise_estimates);
  const auto fut = static_cast<double>(n * batch.future.cols());
  const auto obs = static_cast<double>(n * batch.noise.cols());

  LossBreakdown lb;
  lb.l_tp_clean = (pred.topRows(n) - batch.future).squaredNorm() / fut;
  lb.l_tp_aug = (pred.bottomRows(n) - batch.future).squaredNorm() / fut;
  lb.l_ss_clean = noise.topRows(n).squaredNorm() / obs;
  lb.l_ss_aug = (noise.bottomRows(n) - batch.noise).squaredNorm() / obs;
  lb.l_sup = step.graph.value(step.l_sup)(0, 0);
  lb.l_ss = step.graph.value(step.l_ss)(0, 0);
  lb.lambda = lambda;
  lb.l_total = step.graph.value(step.l_total)(0, 0);
  return lb;
}

TrainResult train(
  const TrainConfig & config, const std::vector<TrajectorySample> & samples,
  const TrainOptions & options)
{
  validate(config);
  if (samples.empty()) {
    throw ConfigError("training corpus yields no samples for the configured horizons");
  }
  const auto started = std::chrono::steady_clock::now();

  TrainResult result;
  result.params = init_params(config.arch, config.seed);
  result.log.mode = config.mode;
  result.log.lambda = config.effective_lambda();

  AdamState<double> adam;
  adam.learning_rate = config.learning_rate;
  const double lambda = config.effective_lambda();
  const auto batch_size = static_cast<std::size_t>(config.batch_size);

  int step = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const std::vector<std::size_t> order = epoch_order(samples.size(), config.seed, epoch);
    int batch_index = 0;
    for (std::size_t start = 0; start < order.size(); start += batch_size, ++batch_index, ++step) {
      const std::size_t count = std::min(batch_size, order.size() - start);
      const std::span<const std::size_t> indices(order.data() + start, count);
      const Batch batch = make_batch(samples, indices, config, result.params, epoch, batch_index);
      StepGraph graph = build_step_graph(result.params, batch, lambda);
      try {
        graph.graph.forward(graph.bindings);
      } catch (const NumericalError & e) {
        throw NumericalError(
          "non-finite loss at step " + std::to_string(step) + " (epoch " + std::to_string(epoch) +
          "): " + e.what());
      }
      const TensorMap grads = graph.graph.backward();
      const LossBreakdown lb = breakdown(graph, batch, lambda);
      if (options.on_step) {
        options.on_step(StepInfo{epoch, step, lb, grads});
      }
      result.log.records.push_back({epoch, step, lb.l_sup, lb.l_ss, lb.l_total});

      TensorMap named = named_parameters(result.params);
      adam_step(named, grads, adam);
      assign_parameters(result.params, named);
    }
  }

  result.log.wall_seconds =
    std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  if (options.checkpoint_path) {
    save_checkpoint(result.params, *options.checkpoint_path);
    result.log.checkpoint_path = *options.checkpoint_path;
  }
  return result;
}

TrainResult train(
  const TrainConfig & config, const Scene & corpus, const Horizons & horizons, bool normalize_samples,
  const TrainOptions & options)
{
  return train(config, prepare_samples(corpus, horizons, normalize_samples), options);
}

void write_train_log_csv(const TrainLog & log, std::ostream & out)
{
  out << "epoch,step,l_sup,l_ss,l_total\n";
  for (const auto & r : log.records) {
    out << r.epoch << ',' << r.step << ',' << format17(r.l_sup) << ',' << format17(r.l_ss) << ','
        << format17(r.l_total) << '\n';
  }
}

TrainLog read_train_log_csv(std::istream & in, Mode mode, double lambda)
{
  TrainLog log;
  log.mode = mode;
  log.lambda = lambda;
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != "epoch,step,l_sup,l_ss,l_total") {
    throw ParseError(1, "expected header 'epoch,step,l_sup,l_ss,l_total'");
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    std::istringstream ss(line);
    StepRecord r;
    char c1 = 0, c2 = 0, c3 = 0, c4 = 0;
    if (!(ss >> r.epoch >> c1 >> r.step >> c2 >> r.l_sup >> c3 >> r.l_ss >> c4 >> r.l_total) ||
        c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',') {
      throw ParseError(line_no, "malformed log row '" + line + "'");
    }
    log.records.push_back(r);
  }
  return log;
}

LambdaDiagnostic lambda_diagnostic(const TrainLog & log)
{
  if (log.mode != Mode::kFull) {
    throw ConfigError("mode " + mode_name(log.mode) + " does not optimize the noise-prediction loss");
  }
  LambdaDiagnostic diag;
  std::vector<double> sums;
  std::vector<int> counts;
  for (const auto & r : log.records) {
    diag.curve.emplace_back(r.step, r.l_ss);
    const auto e = static_cast<std::size_t>(r.epoch);
    if (sums.size() <= e) {
      sums.resize(e + 1, 0.0);
      counts.resize(e + 1, 0);
    }
    sums[e] += r.l_ss;
    counts[e] += 1;
  }
  for (std::size_t e = 0; e < sums.size(); ++e) {
    if (counts[e] > 0) {
      diag.epoch_means.push_back(sums[e] / counts[e]);
    }
  }
  if (diag.epoch_means.size() > 1) {
    int decreases = 0;
    for (std::size_t e = 1; e < diag.epoch_means.size(); ++e) {
      decreases += diag.epoch_means[e] < diag.epoch_means[e - 1] ? 1 : 0;
    }
    diag.trend = static_cast<double>(decreases) / static_cast<double>(diag.epoch_means.size() - 1);
  }
  return diag;
}

}  // namespace sswnp
