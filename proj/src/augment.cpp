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

#include <cmath>

namespace sswnp
{

NoiseField sample_noise(int t_obs, double omega, RngStream & rng)
{
  if (t_obs < 1) {
    throw ConfigError("sample_noise requires t_obs >= 1");
  }
  if (!(omega >= 0.0) || !std::isfinite(omega)) {
    throw ConfigError("noise factor must be a finite value >= 0");
  }
  NoiseField field;
  field.omega = omega;
  field.raw.resize(t_obs, 2);
  for (int t = 0; t < t_obs; ++t) {
    field.raw(t, 0) = rng.normal();
    field.raw(t, 1) = rng.normal();
  }
  field.scaled = omega * field.raw;
  return field;
}

ViewPair make_views(const WaypointSeq & observed, const NoiseField & noise)
{
  if (observed.rows() != noise.scaled.rows()) {
    throw ShapeError(
      "observed window has " + std::to_string(observed.rows()) + " waypoints, noise has " +
      std::to_string(noise.scaled.rows()));
  }
  return {observed, observed + noise.scaled, noise};
}

}  // namespace sswnp
