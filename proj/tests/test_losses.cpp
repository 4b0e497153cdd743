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

#include "sswnp/augment.hpp"
#include "sswnp/config.hpp"
#include "sswnp/errors.hpp"
#include "sswnp/losses.hpp"
#include "sswnp/model.hpp"

#include <gtest/gtest.h>

#include <vector>

namespace sswnp
{
namespace
{

WaypointSeq constant_seq(int t, double x, double y)
{
  WaypointSeq s(t, 2);
  s.col(0).setConstant(x);
  s.col(1).setConstant(y);
  return s;
}

WaypointSeq random_seq(RngStream & rng, int t)
{
  WaypointSeq s(t, 2);
  for (Eigen::Index i = 0; i < s.size(); ++i) s.data()[i] = rng.uniform(-2, 2);
  return s;
}

NoiseField field_of(const WaypointSeq & scaled)
{
  return NoiseField{scaled, 1.0, scaled};
}

/// Test-side mean squared error: plain loops over every entry.
double oracle_mse(const WaypointSeq & a, const WaypointSeq & b)
{
  double sum = 0.0;
  for (Eigen::Index t = 0; t < a.rows(); ++t) {
    for (Eigen::Index c = 0; c < 2; ++c) {
      sum += (a(t, c) - b(t, c)) * (a(t, c) - b(t, c));
    }
  }
  return sum / static_cast<double>(2 * a.rows());
}

TEST(TrajLoss, HandComputedValues)
{
  const WaypointSeq gt = constant_seq(12, 0, 0);
  EXPECT_EQ(traj_loss(gt, gt), 0.0);
  EXPECT_DOUBLE_EQ(traj_loss(constant_seq(12, 1, 0), gt), 0.5);
  EXPECT_DOUBLE_EQ(traj_loss(constant_seq(1, 3, 4), constant_seq(1, 0, 0)), 12.5);
  EXPECT_THROW(traj_loss(constant_seq(11, 0, 0), gt), ShapeError);
}

TEST(SupervisedLoss, HandComputedValues)
{
  const WaypointSeq gt = constant_seq(12, 2, -1);
  const WaypointSeq off = constant_seq(12, 3, -1);
  EXPECT_EQ(supervised_loss({gt}, {gt}, {gt}), 0.0);
  EXPECT_DOUBLE_EQ(supervised_loss({off}, {gt}, {gt}), 0.5);
  EXPECT_DOUBLE_EQ(supervised_loss({off, gt}, {gt, off}, {gt, gt}), 0.5);
  EXPECT_THROW(supervised_loss({}, {}, {}), ConfigError);
  EXPECT_THROW(supervised_loss({gt}, {}, {gt}), ShapeError);
}

TEST(SupervisedLossProperty, SymmetricInViews)
{
  RngStream rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<WaypointSeq> a, b, gt;
    for (int i = 0; i < 3; ++i) {
      a.push_back(random_seq(rng, 12));
      b.push_back(random_seq(rng, 12));
      gt.push_back(random_seq(rng, 12));
    }
    EXPECT_EQ(supervised_loss(a, b, gt), supervised_loss(b, a, gt));
    EXPECT_GE(supervised_loss(a, b, gt), 0.0);
  }
}

TEST(SelfSupervisedLoss, HandComputedValues)
{
  WaypointSeq phi(2, 2);
  phi << 0.1, 0, 0, 0.1;
  const WaypointSeq zero = WaypointSeq::Zero(2, 2);
  // Oracle predictor: clean -> 0, augmented -> phi.
  EXPECT_EQ(self_supervised_loss({zero}, {phi}, {field_of(phi)}), 0.0);
  // Zero predictor: (0.01 + 0 + 0 + 0.01) / 4.
  EXPECT_NEAR(self_supervised_loss({zero}, {zero}, {field_of(phi)}), 0.005, 1e-18);
  // Doubling phi quadruples the augmented-view term.
  EXPECT_NEAR(self_supervised_loss({zero}, {zero}, {field_of(2.0 * phi)}), 0.02, 1e-17);
  EXPECT_THROW(self_supervised_loss({zero}, {zero}, {}), ConfigError);
}

TEST(SelfSupervisedLoss, CleanViewTargetsZeroField)
{
  WaypointSeq phi(2, 2);
  phi << 0.1, 0, 0, 0.1;
  // Predicting phi on the clean view is penalized.
  EXPECT_NEAR(self_supervised_loss({phi}, {phi}, {field_of(phi)}), 0.005, 1e-18);
}

TEST(TotalLoss, WeightedSum)
{
  EXPECT_EQ(total_loss(1.0, 0.5, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(total_loss(1.0, 0.5, 0.1), 1.05);
  EXPECT_THROW(total_loss(1.0, 0.5, -0.1), ConfigError);
}

TEST(TotalLoss, NbaDefaults)
{
  const TrainConfig config;
  EXPECT_EQ(config.lambda, 0.01);
  EXPECT_EQ(config.omega, 0.05);
}

TEST(LossGraph, MatchesPlainFormsOnRandomBatches)
{
  RngStream rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(4));
    std::vector<WaypointSeq> pc, pa, gt, nc, na;
    std::vector<NoiseField> phi;
    for (int i = 0; i < n; ++i) {
      pc.push_back(random_seq(rng, 12));
      pa.push_back(random_seq(rng, 12));
      gt.push_back(random_seq(rng, 12));
      nc.push_back(random_seq(rng, 8));
      na.push_back(random_seq(rng, 8));
      phi.push_back(sample_noise(8, 0.1, rng));
    }
    Tensor pred(2 * n, 24), target(2 * n, 24), noise(2 * n, 16), noise_target(2 * n, 16);
    double oracle_sup = 0.0;
    double oracle_ss = 0.0;
    for (int i = 0; i < n; ++i) {
      pred.row(i) = flatten(pc[i]);
      pred.row(n + i) = flatten(pa[i]);
      target.row(i) = flatten(gt[i]);
      target.row(n + i) = flatten(gt[i]);
      noise.row(i) = flatten(nc[i]);
      noise.row(n + i) = flatten(na[i]);
      noise_target.row(i).setZero();
      noise_target.row(n + i) = flatten(phi[i].scaled);
      oracle_sup += oracle_mse(pc[i], gt[i]) + oracle_mse(pa[i], gt[i]);
      oracle_ss += oracle_mse(nc[i], WaypointSeq::Zero(8, 2)) + oracle_mse(na[i], phi[i].scaled);
    }
    oracle_sup /= n;
    oracle_ss /= n;
    const double lambda = rng.uniform(0, 1);

    Graph g;
    const NodeId l_sup = supervised_loss_node(g, g.constant(pred), g.constant(target));
    const NodeId l_ss = self_supervised_loss_node(g, g.constant(noise), g.constant(noise_target));
    const NodeId l_total = total_loss_node(g, l_sup, l_ss, lambda);
    g.set_output(l_total);
    g.forward({});
    EXPECT_NEAR(g.value(l_sup)(0, 0), oracle_sup, 1e-12);
    EXPECT_NEAR(g.value(l_ss)(0, 0), oracle_ss, 1e-12);
    EXPECT_NEAR(g.value(l_sup)(0, 0), supervised_loss(pc, pa, gt), 1e-12);
    EXPECT_NEAR(g.value(l_ss)(0, 0), self_supervised_loss(nc, na, phi), 1e-12);
    EXPECT_NEAR(
      g.value(l_total)(0, 0), g.value(l_sup)(0, 0) + lambda * g.value(l_ss)(0, 0), 1e-12);
  }
}

}  // namespace
}  // namespace sswnp
