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

#include "sswnp/evaluation.hpp"

#include "sswnp/augment.hpp"
#include "sswnp/errors.hpp"
#include "sswnp/rng.hpp"

#include <algorithm>
#include <limits>

namespace sswnp
{
namespace
{

constexpr std::uint64_t kTestNoiseLabel = label_key("test-noise");
constexpr std::uint64_t kEvalLatentLabel = label_key("eval-latent");
constexpr std::size_t kChunk = 128;

}  // namespace

MetricResult evaluate(
  const ModelParams & params, const std::vector<TrajectorySample> & samples,
  const EvalConfig & config)
{
  if (samples.empty()) {
    throw ConfigError("evaluation corpus yields no samples");
  }
  if (config.k < 1) {
    throw ConfigError("evaluation requires k >= 1");
  }
  const ArchConfig & arch = params.arch;
  const int k = config.k;
  double ade_sum = 0.0;
  double fde_sum = 0.0;

  for (std::size_t start = 0; start < samples.size(); start += kChunk) {
    const std::size_t count = std::min(kChunk, samples.size() - start);
    Tensor observed(static_cast<Eigen::Index>(count), 2 * arch.t_obs);
    Tensor latents(static_cast<Eigen::Index>(count) * k, arch.latent_dim);
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t j = start + i;
      const TrajectorySample & s = samples[j];
      if (s.observed.rows() != arch.t_obs || s.future.rows() != arch.t_fut) {
        throw ShapeError("sample horizons do not match the checkpoint architecture");
      }
      WaypointSeq input = s.observed;
      if (config.omega_test > 0.0) {
        RngStream rng = RngStream::keyed({config.seed, kTestNoiseLabel, j});
        input = make_views(s.observed, sample_noise(arch.t_obs, config.omega_test, rng)).augmented;
      }
      observed.row(static_cast<Eigen::Index>(i)) = flatten(input);
      RngStream latent_rng = RngStream::keyed({config.seed, kEvalLatentLabel, j});
      latents.middleRows(static_cast<Eigen::Index>(i) * k, k) = draw_latents(arch, k, latent_rng);
    }

    const Tensor features = encode_batch(params, observed);
    Tensor repeated(features.rows() * k, features.cols());
    for (Eigen::Index i = 0; i < features.rows(); ++i) {
      repeated.middleRows(i * k, k) = features.row(i).replicate(k, 1);
    }
    const Tensor decoded = decode_batch(params, repeated, latents);

    for (std::size_t i = 0; i < count; ++i) {
      const TrajectorySample & s = samples[start + i];
      double best_ade = std::numeric_limits<double>::infinity();
      double best_fde = std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        const Eigen::Index row = static_cast<Eigen::Index>(i) * k + c;
        // Predictions live in the sample's (possibly normalized) frame, as does the future.
        const WaypointSeq pred = unflatten(decoded.row(row));
        best_ade = std::min(best_ade, ade(pred, s.future));
        best_fde = std::min(best_fde, fde(pred, s.future));
      }
      ade_sum += best_ade;
      fde_sum += best_fde;
    }
  }
  const auto n = static_cast<double>(samples.size());
  return {ade_sum / n, fde_sum / n, k, samples.size()};
}

double relative_degradation(double clean, double noisy)
{
  if (clean > 0.0) {
    return (noisy - clean) / clean;
  }
  return noisy == clean ? 0.0 : std::numeric_limits<double>::infinity();
}

RobustnessReport evaluate_robustness(
  const ModelParams & params, const std::vector<TrajectorySample> & samples,
  const EvalConfig & config)
{
  RobustnessReport report;
  report.omega_test = config.omega_test;
  EvalConfig clean_config = config;
  clean_config.omega_test = 0.0;
  report.clean = evaluate(params, samples, clean_config);
  report.noisy = evaluate(params, samples, config);
  report.ade_degradation = relative_degradation(report.clean.ade, report.noisy.ade);
  report.fde_degradation = relative_degradation(report.clean.fde, report.noisy.fde);
  return report;
}

}  // namespace sswnp
