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

#ifndef SSWNP__AUGMENT_HPP_
#define SSWNP__AUGMENT_HPP_

#include "sswnp/data.hpp"
#include "sswnp/rng.hpp"

namespace sswnp
{

/// Additive waypoint noise: scaled = omega * raw, raw ~ N(0, 1) i.i.d. per
/// waypoint and coordinate.
struct NoiseField
{
  WaypointSeq raw;
  double omega{0.0};
  WaypointSeq scaled;
};

/// Clean and noise-augmented views of one observed window.
struct ViewPair
{
  WaypointSeq clean;
  WaypointSeq augmented;
  NoiseField noise;
};

/// Draws t_obs x 2 standard normals from `rng` (row-major order) and scales
/// them by omega. Throws ConfigError for omega < 0 or t_obs < 1.
NoiseField sample_noise(int t_obs, double omega, RngStream & rng);

/// augmented = clean + noise.scaled. Throws ShapeError on length mismatch.
ViewPair make_views(const WaypointSeq & observed, const NoiseField & noise);

}  // namespace sswnp

#endif  // SSWNP__AUGMENT_HPP_
