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

#ifndef SSWNP__REFERENCE_HPP_
#define SSWNP__REFERENCE_HPP_

#include <array>
#include <optional>

namespace sswnp::reference
{

// Published GroupNet / GroupNet+SSWNP minADE/minFDE on NBA at the 4.0 s
// horizon. Display-only context for the emitted tables; host networks
// differ, so these are never compared against.

struct AdeFde
{
  double ade;
  double fde;
};

/// Module ablation, clean environment: B, B+SC, B+SC+NP.
inline constexpr std::array<AdeFde, 3> kNbaAblation{{{1.13, 1.69}, {1.018, 1.362}, {0.903, 1.147}}};

/// Noisy environment: baseline and full method. No B+SC entry was published.
inline constexpr AdeFde kNbaNoisyBaseline{1.784, 1.771};
inline constexpr AdeFde kNbaNoisyFull{0.95, 1.23};

struct SweepPoint
{
  double omega;
  AdeFde metrics;
};

/// Noise-factor sweep (validation split).
inline constexpr std::array<SweepPoint, 4> kNbaSweep{{
  {1.0, {0.908, 1.154}},
  {0.1, {0.905, 1.131}},
  {0.05, {0.896, 1.130}},
  {0.0, {1.13, 1.69}},
}};

/// Training-time (omega, lambda) per dataset family.
struct Hyperparameters
{
  const char * dataset;
  double omega;
  double lambda;
};

inline constexpr std::array<Hyperparameters, 5> kHyperparameters{{
  {"NBA", 5e-2, 1e-2},
  {"TrajNet", 1e-1, 1e-1},
  {"ETH, UNIV", 1e-2, 1e-1},
  {"ZARA1, ZARA2", 1e-1, 1e-1},
  {"HOTEL", 1e-3, 1e-1},
}};

}  // namespace sswnp::reference

#endif  // SSWNP__REFERENCE_HPP_
