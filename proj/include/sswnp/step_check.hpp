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

#ifndef SSWNP__STEP_CHECK_HPP_
#define SSWNP__STEP_CHECK_HPP_

#include "sswnp/config.hpp"
#include "sswnp/grad_check.hpp"

#include <cstdint>

namespace sswnp
{

/// A randomized training-step objective: mode, omega, lambda, loss mode,
/// batch size and data are all drawn from one seed.
struct StepCheckCase
{
  TrainConfig config;
  int batch{1};
  std::uint64_t seed{0};
};

/// With `random_widths`, layer counts (1-2 per network), widths (4-16),
/// feature and latent sizes are drawn too; horizons and activation come
/// from `arch`.
StepCheckCase random_step_case(
  const ArchConfig & arch, int max_batch, std::uint64_t seed, bool random_widths = false);

/// Builds the composite loss graph of `step_case` (random observations and
/// futures in [-1, 1]) and checks its double-precision gradients against
/// central differences evaluated in extended precision.
GradCheckReport check_step_gradients(const StepCheckCase & step_case, double h, double tol);

}  // namespace sswnp

#endif  // SSWNP__STEP_CHECK_HPP_
