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

#include "sswnp/model.hpp"

#include "sswnp/errors.hpp"

#include <cmath>

namespace sswnp
{
namespace
{

Mlp init_mlp(const std::vector<int> & sizes, RngStream rng)
{
  Mlp mlp;
  for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
    const int fan_in = sizes[i];
    const int fan_out = sizes[i + 1];
    const double bound = std::sqrt(6.0 / (fan_in + fan_out));
    DenseLayer layer;
    layer.weight.resize(fan_in, fan_out);
    for (Eigen::Index r = 0; r < fan_in; ++r) {
      for (Eigen::Index c = 0; c < fan_out; ++c) {
        layer.weight(r, c) = rng.uniform(-bound, bound);
      }
    }
    layer.bias = Tensor::Zero(1, fan_out);
    mlp.layers.push_back(std::move(layer));
  }
  return mlp;
}

std::vector<int> layer_sizes(int in, const std::vector<int> & hidden, int out)
{
  std::vector<int> sizes{in};
  sizes.insert(sizes.end(), hidden.begin(), hidden.end());
  sizes.push_back(out);
  return sizes;
}

void activate(Tensor & x, Activation activation)
{
  if (activation == Activation::kTanh) {
    x = x.array().tanh().matrix();
  } else {
    x = x.cwiseMax(0.0);
  }
}

void add_named(TensorMap & out, const Mlp & mlp, const std::string & prefix)
{
  for (std::size_t i = 0; i < mlp.layers.size(); ++i) {
    const std::string base = prefix + "." + std::to_string(i);
    out.emplace(base + ".weight", mlp.layers[i].weight);
    out.emplace(base + ".bias", mlp.layers[i].bias);
  }
}

void read_named(Mlp & mlp, const TensorMap & named, const std::string & prefix)
{
  for (std::size_t i = 0; i < mlp.layers.size(); ++i) {
    const std::string base = prefix + "." + std::to_string(i);
    for (auto [suffix, slot] :
         {std::pair{".weight", &mlp.layers[i].weight}, std::pair{".bias", &mlp.layers[i].bias}}) {
      auto it = named.find(base + suffix);
      if (it == named.end()) {
        continue;
      }
      if (shape_of(it->second) != shape_of(*slot)) {
        throw ShapeError("parameter '" + base + suffix + "' changes shape");
      }
      *slot = it->second;
    }
  }
}

}  // namespace

Activation parse_activation(std::string_view name)
{
  if (name == "tanh") return Activation::kTanh;
  if (name == "relu") return Activation::kRelu;
  throw ConfigError("unknown activation '" + std::string(name) + "'");
}

std::string activation_name(Activation activation)
{
  return activation == Activation::kTanh ? "tanh" : "relu";
}

void validate(const ArchConfig & arch)
{
  auto positive = [](const std::vector<int> & v) {
    for (int x : v) {
      if (x <= 0) return false;
    }
    return true;
  };
  if (arch.t_obs < 2 || arch.t_fut < 1 || arch.feature_dim <= 0 || arch.latent_dim < 0 ||
      !(arch.latent_std >= 0.0) || !positive(arch.fe_hidden) || !positive(arch.sup_hidden) ||
      !positive(arch.ss_hidden)) {
    throw ConfigError("invalid architecture: sizes must be positive, latent_std >= 0");
  }
}

ModelParams init_params(const ArchConfig & arch, std::uint64_t seed)
{
  validate(arch);
  ModelParams params;
  params.arch = arch;
  params.fe = init_mlp(
    layer_sizes(2 * arch.t_obs, arch.fe_hidden, arch.feature_dim),
    RngStream::keyed({seed, label_key("init"), label_key("fe")}));
  params.sup = init_mlp(
    layer_sizes(arch.feature_dim + arch.latent_dim, arch.sup_hidden, 2 * arch.t_fut),
    RngStream::keyed({seed, label_key("init"), label_key("sup")}));
  params.ss = init_mlp(
    layer_sizes(arch.feature_dim, arch.ss_hidden, 2 * arch.t_obs),
    RngStream::keyed({seed, label_key("init"), label_key("ss")}));
  return params;
}

TensorMap named_parameters(const ModelParams & params)
{
  TensorMap out;
  add_named(out, params.fe, "fe");
  add_named(out, params.sup, "sup");
  add_named(out, params.ss, "ss");
  return out;
}

void assign_parameters(ModelParams & params, const TensorMap & named)
{
  read_named(params.fe, named, "fe");
  read_named(params.sup, named, "sup");
  read_named(params.ss, named, "ss");
}

Tensor flatten(const WaypointSeq & seq)
{
  return Eigen::Map<const Tensor>(seq.data(), 1, seq.size());
}

WaypointSeq unflatten(const Eigen::Ref<const Tensor> & row)
{
  if (row.rows() != 1 || row.cols() % 2 != 0) {
    throw ShapeError("unflatten expects a 1 x 2T row, got " + to_string(shape_of(row)));
  }
  WaypointSeq out(row.cols() / 2, 2);
  for (Eigen::Index t = 0; t < out.rows(); ++t) {
    out(t, 0) = row(0, 2 * t);
    out(t, 1) = row(0, 2 * t + 1);
  }
  return out;
}

Tensor mlp_forward(const Mlp & mlp, const Tensor & x, Activation activation, bool activate_output)
{
  if (mlp.empty()) {
    throw ShapeError("mlp has no layers");
  }
  if (x.cols() != mlp.input_dim()) {
    throw ShapeError(
      "mlp expects " + std::to_string(mlp.input_dim()) + " inputs, got " +
      to_string(shape_of(x)));
  }
  Tensor h = x;
  for (std::size_t i = 0; i < mlp.layers.size(); ++i) {
    Tensor z = h * mlp.layers[i].weight;
    h = z.rowwise() + mlp.layers[i].bias.row(0);
    if (i + 1 < mlp.layers.size() || activate_output) {
      activate(h, activation);
    }
  }
  return h;
}

Tensor encode_batch(const ModelParams & params, const Tensor & observed_rows)
{
  return mlp_forward(params.fe, observed_rows, params.arch.activation, true);
}

Tensor decode_batch(const ModelParams & params, const Tensor & features, const Tensor & latents)
{
  if (features.rows() != latents.rows()) {
    throw ShapeError("features and latents differ in row count");
  }
  if (latents.cols() == 0) {
    return mlp_forward(params.sup, features, params.arch.activation, false);
  }
  Tensor input(features.rows(), features.cols() + latents.cols());
  input << features, latents;
  return mlp_forward(params.sup, input, params.arch.activation, false);
}

Tensor noise_batch(const ModelParams & params, const Tensor & features)
{
  if (params.ss.empty()) {
    throw ConfigError("model has no noise-prediction parameters");
  }
  return mlp_forward(params.ss, features, params.arch.activation, false);
}

Tensor draw_latents(const ArchConfig & arch, int k, RngStream & rng)
{
  Tensor z(k, arch.latent_dim);
  for (Eigen::Index r = 0; r < z.rows(); ++r) {
    for (Eigen::Index c = 0; c < z.cols(); ++c) {
      z(r, c) = arch.latent_std * rng.normal();
    }
  }
  return z;
}

Tensor encode(const ModelParams & params, const WaypointSeq & observed)
{
  if (observed.rows() != params.arch.t_obs) {
    throw ShapeError(
      "expected " + std::to_string(params.arch.t_obs) + " observed waypoints, got " +
      std::to_string(observed.rows()));
  }
  return encode_batch(params, flatten(observed));
}

PredictionSet predict_future(
  const ModelParams & params, const Tensor & features, int k, RngStream & rng)
{
  if (k < 1) {
    throw ConfigError("predict_future requires k >= 1");
  }
  if (features.rows() != 1 || features.cols() != params.arch.feature_dim) {
    throw ShapeError("predict_future expects a 1 x feature_dim feature row");
  }
  const Tensor latents = draw_latents(params.arch, k, rng);
  const Tensor repeated = features.replicate(k, 1);
  const Tensor decoded = decode_batch(params, repeated, latents);
  PredictionSet set;
  set.samples.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    set.samples.push_back(unflatten(decoded.row(i)));
  }
  return set;
}

WaypointSeq predict_noise(const ModelParams & params, const Tensor & features)
{
  if (features.rows() != 1 || features.cols() != params.arch.feature_dim) {
    throw ShapeError("predict_noise expects a 1 x feature_dim feature row");
  }
  return unflatten(noise_batch(params, features));
}

NodeId mlp_node(
  Graph & graph, NodeId x, const Mlp & mlp, std::string_view prefix, Activation activation,
  bool activate_output)
{
  NodeId h = x;
  for (std::size_t i = 0; i < mlp.layers.size(); ++i) {
    const std::string base = std::string(prefix) + "." + std::to_string(i);
    const NodeId w = graph.parameter(base + ".weight", mlp.layers[i].weight);
    const NodeId b = graph.parameter(base + ".bias", mlp.layers[i].bias);
    h = graph.add(graph.matmul(h, w), b);
    if (i + 1 < mlp.layers.size() || activate_output) {
      h = activation == Activation::kTanh ? graph.tanh(h) : graph.relu(h);
    }
  }
  return h;
}

}  // namespace sswnp
