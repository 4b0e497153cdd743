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
#include "sswnp/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace sswnp
{
namespace
{

TEST(SampleNoise, ZeroOmegaGivesExactZeroField)
{
  RngStream rng(1);
  const NoiseField f = sample_noise(8, 0.0, rng);
  EXPECT_EQ(f.scaled, WaypointSeq::Zero(8, 2));
  EXPECT_NE(f.raw, WaypointSeq::Zero(8, 2));
}

TEST(SampleNoise, ScaledIsOmegaTimesRawExactly)
{
  RngStream rng(2);
  const NoiseField f = sample_noise(8, 0.05, rng);
  EXPECT_EQ(f.omega, 0.05);
  for (Eigen::Index i = 0; i < f.raw.size(); ++i) {
    EXPECT_EQ(f.scaled.data()[i], 0.05 * f.raw.data()[i]);
  }
}

TEST(SampleNoise, DoublingOmegaDoublesFieldExactly)
{
  RngStream a(3);
  RngStream b(3);
  const NoiseField f1 = sample_noise(12, 0.07, a);
  const NoiseField f2 = sample_noise(12, 0.14, b);
  EXPECT_EQ(f2.raw, f1.raw);
  EXPECT_EQ(f2.scaled, 2.0 * f1.scaled);
}

TEST(SampleNoise, RejectsInvalidArguments)
{
  RngStream rng(4);
  EXPECT_THROW(sample_noise(8, -0.1, rng), ConfigError);
  EXPECT_THROW(sample_noise(0, 0.1, rng), ConfigError);
}

TEST(SampleNoiseProperty, EmpiricalMoments)
{
  const double omega = 0.1;
  RngStream rng(5);
  const int fields = 50000;  // 8 x 2 entries each: 8e5 draws
  double sum = 0.0;
  double sq = 0.0;
  long n = 0;
  for (int i = 0; i < fields; ++i) {
    const NoiseField f = sample_noise(8, omega, rng);
    sum += f.scaled.sum();
    sq += f.scaled.squaredNorm();
    n += f.scaled.size();
  }
  const double mean = sum / n;
  const double std = std::sqrt(sq / n - mean * mean);
  EXPECT_LE(std::abs(mean), 3.0 * omega / std::sqrt(static_cast<double>(n)));
  EXPECT_NEAR(std, omega, 0.02 * omega);
}

TEST(MakeViews, ElementwiseAddition)
{
  WaypointSeq obs(2, 2);
  obs << 0, 0, 1, 0;
  NoiseField noise;
  noise.scaled.resize(2, 2);
  noise.scaled << 0.1, -0.1, 0, 0.2;
  noise.raw = noise.scaled;
  noise.omega = 1.0;
  const ViewPair v = make_views(obs, noise);
  WaypointSeq expected(2, 2);
  expected << 0.1, -0.1, 1, 0.2;
  EXPECT_EQ(v.clean, obs);
  EXPECT_EQ(v.augmented, expected);
}

TEST(MakeViews, ZeroNoiseLeavesViewsEqual)
{
  RngStream rng(6);
  WaypointSeq obs(8, 2);
  for (Eigen::Index i = 0; i < obs.size(); ++i) obs.data()[i] = rng.uniform(-10, 10);
  const ViewPair v = make_views(obs, sample_noise(8, 0.0, rng));
  EXPECT_EQ(v.augmented, v.clean);
}

TEST(MakeViews, LengthMismatchRejected)
{
  RngStream rng(7);
  EXPECT_THROW(make_views(WaypointSeq::Zero(8, 2), sample_noise(7, 0.1, rng)), ShapeError);
}

TEST(MakeViewsProperty, RecoverabilityExactOnDyadicGrid)
{
  RngStream rng(8);
  for (int trial = 0; trial < 1000; ++trial) {
    WaypointSeq obs(8, 2);
    NoiseField noise;
    noise.raw.resize(8, 2);
    for (Eigen::Index i = 0; i < obs.size(); ++i) {
      obs.data()[i] = static_cast<double>(rng.below(1 << 14)) / 128.0 - 64.0;
      noise.raw.data()[i] = static_cast<double>(rng.below(1 << 10)) / 1024.0 - 0.5;
    }
    noise.omega = 0.25;
    noise.scaled = noise.omega * noise.raw;
    const ViewPair v = make_views(obs, noise);
    EXPECT_EQ(WaypointSeq(v.augmented - v.clean), noise.scaled);
  }
}

TEST(MakeViewsProperty, RecoverabilityWithinRoundingOnGeneralInputs)
{
  RngStream rng(9);
  for (int trial = 0; trial < 1000; ++trial) {
    WaypointSeq obs(8, 2);
    for (Eigen::Index i = 0; i < obs.size(); ++i) obs.data()[i] = rng.uniform(-100, 100);
    const NoiseField noise = sample_noise(8, 0.1, rng);
    const ViewPair v = make_views(obs, noise);
    // One rounding of the sum, bounded by half an ulp of the largest operand.
    const double bound = std::numeric_limits<double>::epsilon() * 128.0;
    EXPECT_LE((v.augmented - v.clean - noise.scaled).cwiseAbs().maxCoeff(), bound);
  }
}

}  // namespace
}  // namespace sswnp
