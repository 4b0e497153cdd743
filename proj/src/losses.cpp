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

#include "sswnp/losses.hpp"

#include "sswnp/errors.hpp"

#include <cmath>

namespace sswnp
{
namespace
{

double mse(const WaypointSeq & a, const WaypointSeq & b)
{
  return (a - b).squaredNorm() / static_cast<double>(a.size());
}

void require_same(const WaypointSeq & a, const WaypointSeq & b, const char * what)
{
  if (a.rows() != b.rows() || a.size() == 0) {
    throw ShapeError(
      std::string(what) + ": lengths differ (" + std::to_string(a.rows()) + " vs " +
      std::to_string(b.rows()) + ")");
  }
}

}  // namespace

double traj_loss(const WaypointSeq & pred, const WaypointSeq & gt)
{
  require_same(pred, gt, "traj_loss");
  return mse(pred, gt);
}

double supervised_loss(
  const std::vector<WaypointSeq> & pred_clean, const std::vector<WaypointSeq> & pred_aug,
  const std::vector<WaypointSeq> & gt)
{
  if (gt.empty()) {
    throw ConfigError("supervised_loss: empty batch");
  }
  if (pred_clean.size() != gt.size() || pred_aug.size() != gt.size()) {
    throw ShapeError("supervised_loss: batch sizes differ");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    sum += traj_loss(pred_clean[i], gt[i]) + traj_loss(pred_aug[i], gt[i]);
  }
  return sum / static_cast<double>(gt.size());
}

double self_supervised_loss(
  const std::vector<WaypointSeq> & noise_clean, const std::vector<WaypointSeq> & noise_aug,
  const std::vector<NoiseField> & true_noise)
{
  if (true_noise.empty()) {
    throw ConfigError("self_supervised_loss: empty batch");
  }
  if (noise_clean.size() != true_noise.size() || noise_aug.size() != true_noise.size()) {
    throw ShapeError("self_supervised_loss: batch sizes differ");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < true_noise.size(); ++i) {
    const WaypointSeq & target = true_noise[i].scaled;
    require_same(noise_clean[i], target, "self_supervised_loss");
    require_same(noise_aug[i], target, "self_supervised_loss");
    sum += noise_clean[i].squaredNorm() / static_cast<double>(target.size()) +
           mse(noise_aug[i], target);
  }
  return sum / static_cast<double>(true_noise.size());
}

double total_loss(double l_sup, double l_ss, double lambda)
{
  if (!(lambda >= 0.0)) {
    throw ConfigError("lambda must be >= 0");
  }
  return l_sup + lambda * l_ss;
}

NodeId supervised_loss_node(Graph & graph, NodeId pred_both, NodeId target_both)
{
  return graph.scale(graph.mse(pred_both, target_both), 2.0);
}

NodeId self_supervised_loss_node(Graph & graph, NodeId noise_both, NodeId target_both)
{
  return graph.scale(graph.mse(noise_both, target_both), 2.0);
}

NodeId total_loss_node(Graph & graph, NodeId l_sup, NodeId l_ss, double lambda)
{
  if (!(lambda >= 0.0)) {
    throw ConfigError("lambda must be >= 0");
  }
  return graph.add(l_sup, graph.scale(l_ss, lambda));
}

}  // namespace sswnp
