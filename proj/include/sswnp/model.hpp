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

#ifndef SSWNP__MODEL_HPP_
#define SSWNP__MODEL_HPP_

#include "sswnp/data.hpp"
#include "sswnp/graph.hpp"
#include "sswnp/rng.hpp"
#include "sswnp/tensor.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sswnp
{

enum class Activation { kTanh, kRelu };

Activation parse_activation(std::string_view name);
std::string activation_name(Activation activation);

struct ArchConfig
{
  int t_obs{8};
  int t_fut{12};
  int feature_dim{32};
  std::vector<int> fe_hidden{64, 64};
  std::vector<int> sup_hidden{64, 64};
  std::vector<int> ss_hidden{128, 64};
  int latent_dim{8};
  double latent_std{1.0};
  Activation activation{Activation::kTanh};

  friend bool operator==(const ArchConfig &, const ArchConfig &) = default;
};

void validate(const ArchConfig & arch);

/// y = x W + b, with W stored fan_in x fan_out and b as a 1 x fan_out row.
struct DenseLayer
{
  Tensor weight;
  Tensor bias;
};

struct Mlp
{
  std::vector<DenseLayer> layers;

  bool empty() const noexcept { return layers.empty(); }
  Eigen::Index input_dim() const { return layers.front().weight.rows(); }
  Eigen::Index output_dim() const { return layers.back().weight.cols(); }
};

/// The three parameter bundles: feature extractor, trajectory predictor,
/// noise predictor. `ss` may be empty in an inference-only checkpoint.
struct ModelParams
{
  ArchConfig arch;
  Mlp fe;
  Mlp sup;
  Mlp ss;
};

struct PredictionSet
{
  std::vector<WaypointSeq> samples;

  int k() const noexcept { return static_cast<int>(samples.size()); }
};

/// Glorot-uniform weights, zero biases; deterministic in `seed`.
ModelParams init_params(const ArchConfig & arch, std::uint64_t seed);

/// Flattened parameters keyed "fe.0.weight", "sup.1.bias", ...
TensorMap named_parameters(const ModelParams & params);
void assign_parameters(ModelParams & params, const TensorMap & named);

/// (x_0, y_0, x_1, y_1, ...) as a 1 x 2T row.
Tensor flatten(const WaypointSeq & seq);
WaypointSeq unflatten(const Eigen::Ref<const Tensor> & row);

// Batched inference path; one row per agent.
Tensor mlp_forward(const Mlp & mlp, const Tensor & x, Activation activation, bool activate_output);
Tensor encode_batch(const ModelParams & params, const Tensor & observed_rows);
Tensor decode_batch(const ModelParams & params, const Tensor & features, const Tensor & latents);
Tensor noise_batch(const ModelParams & params, const Tensor & features);

/// k x latent_dim latent draws, latent_std * N(0, 1).
Tensor draw_latents(const ArchConfig & arch, int k, RngStream & rng);

/// Feature vector (1 x feature_dim) of one observed window.
Tensor encode(const ModelParams & params, const WaypointSeq & observed);

/// K futures decoded from one feature vector with fresh latents from `rng`.
PredictionSet predict_future(
  const ModelParams & params, const Tensor & features, int k, RngStream & rng);

/// Noise estimate (t_obs x 2) decoded from one feature vector.
WaypointSeq predict_noise(const ModelParams & params, const Tensor & features);

/// Appends the parameter nodes and layers of `mlp` to `graph`; parameters
/// are named "<prefix>.<layer>.weight" / ".bias".
NodeId mlp_node(
  Graph & graph, NodeId x, const Mlp & mlp, std::string_view prefix, Activation activation,
  bool activate_output);

}  // namespace sswnp

#endif  // SSWNP__MODEL_HPP_
