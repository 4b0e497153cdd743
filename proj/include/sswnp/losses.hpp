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

#ifndef SSWNP__LOSSES_HPP_
#define SSWNP__LOSSES_HPP_

#include "sswnp/augment.hpp"
#include "sswnp/data.hpp"
#include "sswnp/graph.hpp"

#include <vector>

namespace sswnp
{

struct LossBreakdown
{
  double l_tp_clean{0.0};  // mean over agents of L_tp on the clean view
  double l_tp_aug{0.0};    // mean over agents of L_tp on the augmented view
  double l_sup{0.0};
  double l_ss_clean{0.0};
  double l_ss_aug{0.0};
  double l_ss{0.0};
  double lambda{0.0};
  double l_total{0.0};
};

/// Mean squared coordinate difference over every t x 2 entry.
double traj_loss(const WaypointSeq & pred, const WaypointSeq & gt);

/// (1/N) sum_i [L_tp(clean_i, gt_i) + L_tp(aug_i, gt_i)].
double supervised_loss(
  const std::vector<WaypointSeq> & pred_clean, const std::vector<WaypointSeq> & pred_aug,
  const std::vector<WaypointSeq> & gt);

/// (1/N) sum_i [MSE(noise_clean_i, 0) + MSE(noise_aug_i, true_i.scaled)].
double self_supervised_loss(
  const std::vector<WaypointSeq> & noise_clean, const std::vector<WaypointSeq> & noise_aug,
  const std::vector<NoiseField> & true_noise);

/// l_sup + lambda * l_ss; lambda must be >= 0.
double total_loss(double l_sup, double l_ss, double lambda);

// Graph forms. Both views are stacked along the batch axis, clean rows
// first, so one mse over the 2N rows equals half the per-agent sum.

/// 2 * mse(pred_both, target_both) == L_sup for stacked [clean; aug] rows.
NodeId supervised_loss_node(Graph & graph, NodeId pred_both, NodeId target_both);

/// 2 * mse(noise_both, [0; Phi]) == L_ss for stacked rows.
NodeId self_supervised_loss_node(Graph & graph, NodeId noise_both, NodeId target_both);

NodeId total_loss_node(Graph & graph, NodeId l_sup, NodeId l_ss, double lambda);

}  // namespace sswnp

#endif  // SSWNP__LOSSES_HPP_
