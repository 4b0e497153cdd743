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

#ifndef SSWNP__EVALUATION_HPP_
#define SSWNP__EVALUATION_HPP_

#include "sswnp/config.hpp"
#include "sswnp/data.hpp"
#include "sswnp/metrics.hpp"
#include "sswnp/model.hpp"

#include <vector>

namespace sswnp
{

/// Mean min-of-K ADE/FDE over `samples`. With omega_test > 0 each observed
/// window is perturbed by fresh noise at omega_test (stream keyed by seed
/// and sample index) before encoding. Latents are keyed the same way, so
/// clean and noisy evaluations of one sample share their K latent draws.
/// Only the feature extractor and trajectory predictor are used.
MetricResult evaluate(
  const ModelParams & params, const std::vector<TrajectorySample> & samples,
  const EvalConfig & config);

/// Clean vs. noisy-environment comparison of one model.
struct RobustnessReport
{
  MetricResult clean;
  MetricResult noisy;
  double omega_test{0.0};
  double ade_degradation{0.0};  // (noisy - clean) / clean
  double fde_degradation{0.0};
};

RobustnessReport evaluate_robustness(
  const ModelParams & params, const std::vector<TrajectorySample> & samples,
  const EvalConfig & config);

double relative_degradation(double clean, double noisy);

}  // namespace sswnp

#endif  // SSWNP__EVALUATION_HPP_
