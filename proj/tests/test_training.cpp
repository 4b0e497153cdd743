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
#include "sswnp/checkpoint.hpp"
#include "sswnp/errors.hpp"
#include "sswnp/experiments.hpp"
#include "sswnp/losses.hpp"
#include "sswnp/step_check.hpp"
#include "sswnp/synth.hpp"
#include "sswnp/training.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <sstream>

namespace sswnp
{
namespace
{

ArchConfig small_arch()
{
  ArchConfig arch;
  arch.feature_dim = 16;
  arch.fe_hidden = {32};
  arch.sup_hidden = {32};
  arch.latent_dim = 2;
  return arch;
}

std::vector<TrajectorySample> corpus(Family family, int agents, std::uint64_t seed = 3)
{
  SynthSpec spec;
  spec.family = family;
  spec.agents = agents;
  spec.steps = 24;
  spec.seed = seed;
  return prepare_samples(generate(spec), Horizons{}, true);
}

TrainConfig small_config(Mode mode)
{
  TrainConfig config;
  config.mode = mode;
  config.arch = small_arch();
  config.epochs = 3;
  config.batch_size = 8;
  config.omega = 0.1;
  config.lambda = 0.5;
  return config;
}

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }

TEST(Train, RecordsOneEntryPerStep)
{
  const auto samples = corpus(Family::kConstantVelocity, 4);  // 4 x 5 = 20 samples
  ASSERT_EQ(samples.size(), 20u);
  const TrainResult r = train(small_config(Mode::kFull), samples);
  // ceil(20 / 8) = 3 steps per epoch, final batch partial.
  EXPECT_EQ(r.log.records.size(), 9u);
  EXPECT_EQ(r.log.records.back().epoch, 2);
  EXPECT_EQ(r.log.records.back().step, 8);
}

TEST(Train, IsBitDeterministic)
{
  const auto samples = corpus(Family::kPiecewiseGoal, 4);
  for (Mode mode : kAllModes) {
    for (TrajLossMode tl : {TrajLossMode::kSingle, TrajLossMode::kBestOfK}) {
      TrainConfig config = small_config(mode);
      config.traj_loss = tl;
      const TrainResult a = train(config, samples);
      const TrainResult b = train(config, samples);
      ASSERT_EQ(a.log.records.size(), b.log.records.size());
      for (std::size_t i = 0; i < a.log.records.size(); ++i) {
        EXPECT_TRUE(bit_equal(a.log.records[i].l_total, b.log.records[i].l_total));
        EXPECT_TRUE(bit_equal(a.log.records[i].l_ss, b.log.records[i].l_ss));
      }
      std::ostringstream ca, cb;
      write_checkpoint(a.params, ca);
      write_checkpoint(b.params, cb);
      EXPECT_EQ(ca.str(), cb.str());
    }
  }
}

TEST(Train, SeedChangesTheRun)
{
  const auto samples = corpus(Family::kConstantVelocity, 4);
  TrainConfig config = small_config(Mode::kFull);
  const TrainResult a = train(config, samples);
  config.seed = 2;
  const TrainResult b = train(config, samples);
  EXPECT_NE(a.log.records.back().l_total, b.log.records.back().l_total);
}

TEST(Train, DegenerateFullModeCollapsesToBaseline)
{
  const auto samples = corpus(Family::kPiecewiseGoal, 5);
  TrainConfig base = small_config(Mode::kBaseline);
  TrainConfig full = small_config(Mode::kFull);
  full.omega = 0.0;
  full.lambda = 0.0;
  const TrainResult rb = train(base, samples);
  const TrainResult rf = train(full, samples);
  ASSERT_EQ(rb.log.records.size(), rf.log.records.size());
  for (std::size_t i = 0; i < rb.log.records.size(); ++i) {
    EXPECT_TRUE(bit_equal(rb.log.records[i].l_total, rf.log.records[i].l_total)) << "step " << i;
  }
}

TEST(TrainProperty, LossIdentityAndModeSemanticsEveryStep)
{
  const auto samples = corpus(Family::kSinusoidalLaneChange, 4);
  for (Mode mode : kAllModes) {
    const TrainConfig config = small_config(mode);
    TrainOptions options;
    int steps = 0;
    options.on_step = [&](const StepInfo & info) {
      ++steps;
      const LossBreakdown & lb = info.losses;
      EXPECT_NEAR(lb.l_total, lb.l_sup + lb.lambda * lb.l_ss, 1e-12);
      EXPECT_NEAR(lb.l_sup, lb.l_tp_clean + lb.l_tp_aug, 1e-12);
      EXPECT_NEAR(lb.l_ss, lb.l_ss_clean + lb.l_ss_aug, 1e-12);
      double ss_norm = 0.0;
      for (const auto & [name, grad] : info.gradients) {
        if (name.starts_with("ss.")) ss_norm += grad.squaredNorm();
      }
      if (mode == Mode::kFull) {
        EXPECT_EQ(lb.lambda, config.lambda);
        EXPECT_GT(ss_norm, 0.0);
      } else {
        EXPECT_EQ(lb.lambda, 0.0);
        EXPECT_EQ(lb.l_total, lb.l_sup);
        EXPECT_LE(std::sqrt(ss_norm), 1e-12);
      }
      if (mode == Mode::kBaseline) {
        // The augmented view is the clean view.
        EXPECT_EQ(lb.l_tp_clean, lb.l_tp_aug);
        EXPECT_EQ(lb.l_ss_aug, lb.l_ss_clean);
      }
    };
    train(config, samples, options);
    EXPECT_GT(steps, 0);
  }
}

TEST(TrainProperty, ZeroLambdaGivesZeroNoiseHeadGradient)
{
  const auto samples = corpus(Family::kConstantTurnRate, 4);
  TrainConfig config = small_config(Mode::kFull);
  config.lambda = 0.0;
  TrainOptions options;
  options.on_step = [](const StepInfo & info) {
    for (const auto & [name, grad] : info.gradients) {
      if (name.starts_with("ss.")) {
        EXPECT_LE(grad.norm(), 1e-12) << name;
      }
    }
  };
  train(config, samples, options);
}

TEST(Train, ErrorsOnEmptySetAndNonFiniteLoss)
{
  EXPECT_THROW(train(small_config(Mode::kFull), std::vector<TrajectorySample>{}), ConfigError);
  auto samples = corpus(Family::kConstantVelocity, 2);
  for (auto & s : samples) {
    s.future.setConstant(1e300);
  }
  try {
    train(small_config(Mode::kFull), samples);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError & e) {
    EXPECT_NE(std::string(e.what()).find("step 0"), std::string::npos) << e.what();
  }
}

TEST(Train, RejectsInvalidConfig)
{
  const auto samples = corpus(Family::kConstantVelocity, 2);
  TrainConfig config = small_config(Mode::kFull);
  config.omega = -1.0;
  EXPECT_THROW(train(config, samples), ConfigError);
  config = small_config(Mode::kFull);
  config.batch_size = 0;
  EXPECT_THROW(train(config, samples), ConfigError);
}

TEST(Train, WritesCheckpoint)
{
  const auto samples = corpus(Family::kConstantVelocity, 2);
  const std::string path = ::testing::TempDir() + "/train_checkpoint.ckpt";
  TrainOptions options;
  options.checkpoint_path = path;
  const TrainResult r = train(small_config(Mode::kFull), samples, options);
  EXPECT_EQ(r.log.checkpoint_path, path);
  const ModelParams back = load_checkpoint(path);
  EXPECT_EQ(named_parameters(back).at("sup.1.weight"), named_parameters(r.params).at("sup.1.weight"));
}

TEST(TrainLogCsv, RoundTripsExactly)
{
  const auto samples = corpus(Family::kConstantVelocity, 2);
  const TrainResult r = train(small_config(Mode::kFull), samples);
  std::stringstream s;
  write_train_log_csv(r.log, s);
  EXPECT_EQ(s.str().rfind("epoch,step,l_sup,l_ss,l_total\n", 0), 0u);
  const TrainLog back = read_train_log_csv(s, Mode::kFull, 0.5);
  ASSERT_EQ(back.records.size(), r.log.records.size());
  for (std::size_t i = 0; i < back.records.size(); ++i) {
    EXPECT_TRUE(bit_equal(back.records[i].l_sup, r.log.records[i].l_sup));
    EXPECT_TRUE(bit_equal(back.records[i].l_total, r.log.records[i].l_total));
  }
  std::stringstream bad("epoch,step\n");
  EXPECT_THROW(read_train_log_csv(bad, Mode::kFull, 0.5), ParseError);
}

TrainLog synthetic_log(const std::vector<double> & per_epoch)
{
  TrainLog log;
  log.mode = Mode::kFull;
  int step = 0;
  for (std::size_t e = 0; e < per_epoch.size(); ++e) {
    for (int i = 0; i < 3; ++i) {
      log.records.push_back({static_cast<int>(e), step++, 1.0, per_epoch[e], 1.0});
    }
  }
  return log;
}

TEST(LambdaDiagnostic, TrendStatistic)
{
  EXPECT_EQ(lambda_diagnostic(synthetic_log({5, 4, 3, 2, 1})).trend, 1.0);
  EXPECT_EQ(lambda_diagnostic(synthetic_log({2, 2, 2, 2})).trend, 0.0);
  EXPECT_EQ(lambda_diagnostic(synthetic_log({3, 1, 2, 0})).trend, 2.0 / 3.0);
  const LambdaDiagnostic d = lambda_diagnostic(synthetic_log({3, 1}));
  EXPECT_EQ(d.curve.size(), 6u);
  EXPECT_EQ(d.curve[4], (std::pair<int, double>{4, 1.0}));
  EXPECT_EQ(d.epoch_means, (std::vector<double>{3, 1}));
}

TEST(LambdaDiagnostic, RequiresNoisePredictionObjective)
{
  TrainLog log = synthetic_log({1, 2});
  log.mode = Mode::kBaseline;
  EXPECT_THROW(lambda_diagnostic(log), ConfigError);
  log.mode = Mode::kSpatialConsistency;
  EXPECT_THROW(lambda_diagnostic(log), ConfigError);
}

TEST(LambdaDiagnostic, HealthyRunHalvesNoiseLoss)
{
  // Seed-median over 3 seeds of final/first epoch-mean L_ss at lambda 0.01.
  const auto samples = corpus(Family::kPiecewiseGoal, 16);
  std::vector<double> ratios;
  for (std::uint64_t seed : {1, 2, 3}) {
    TrainConfig config;
    config.mode = Mode::kFull;
    config.lambda = 0.01;
    config.omega = 0.05;
    config.epochs = 20;
    config.seed = seed;
    const LambdaDiagnostic d = lambda_diagnostic(train(config, samples).log);
    ratios.push_back(d.epoch_means.back() / d.epoch_means.front());
  }
  EXPECT_LT(median(ratios), 0.5);
}

TEST(NoisePredictor, BeatsZeroPredictorOnHeldOutData)
{
  const auto train_samples = corpus(Family::kConstantVelocity, 128, 5);
  const auto held = corpus(Family::kConstantVelocity, 8, 6);
  TrainConfig config;
  config.mode = Mode::kFull;
  config.omega = 0.1;
  config.lambda = 1.0;
  config.epochs = 50;
  const ModelParams params = train(config, train_samples).params;

  RngStream rng(77);
  double model_err = 0.0;
  double zero_err = 0.0;
  for (const auto & s : held) {
    const NoiseField noise = sample_noise(8, config.omega, rng);
    const ViewPair v = make_views(s.observed, noise);
    const WaypointSeq estimate = predict_noise(params, encode(params, v.augmented));
    model_err += traj_loss(estimate, noise.scaled);
    zero_err += traj_loss(WaypointSeq::Zero(8, 2), noise.scaled);
  }
  EXPECT_LT(model_err, zero_err);
}

TEST(StepCheck, RandomCompositeGraphsPass)
{
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const StepCheckCase c = random_step_case(ArchConfig{}, 4, seed, true);
    EXPECT_LE(c.batch, 4);
    const GradCheckReport r = check_step_gradients(c, 1e-5, 1e-5);
    EXPECT_TRUE(r.passed) << "case " << seed << ": " << r.worst_parameter << " "
                          << r.max_relative_error;
  }
}

TEST(StepCheck, FullSizeReferenceNetworkPasses)
{
  StepCheckCase c = random_step_case(ArchConfig{}, 2, 3, false);
  c.config.mode = Mode::kFull;
  const GradCheckReport r = check_step_gradients(c, 1e-5, 1e-5);
  EXPECT_TRUE(r.passed) << r.worst_parameter << " " << r.max_relative_error;
  EXPECT_EQ(r.parameters.size(), 18u);
}

}  // namespace
}  // namespace sswnp
