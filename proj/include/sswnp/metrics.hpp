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

#ifndef SSWNP__METRICS_HPP_
#define SSWNP__METRICS_HPP_

#include "sswnp/errors.hpp"
#include "sswnp/model.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <limits>
#include <string>

namespace sswnp
{

struct MetricResult
{
  double ade{0.0};
  double fde{0.0};
  int k{1};
  std::size_t n{1};
};

namespace detail
{
template <typename A, typename B>
void require_matching_horizon(const Eigen::MatrixBase<A> & pred, const Eigen::MatrixBase<B> & gt)
{
  if (pred.rows() != gt.rows() || pred.cols() != 2 || gt.cols() != 2 || pred.rows() < 1) {
    throw ShapeError(
      "prediction has " + std::to_string(pred.rows()) + " waypoints, ground truth has " +
      std::to_string(gt.rows()));
  }
}
}  // namespace detail

/// Mean Euclidean distance between corresponding waypoints.
template <typename A, typename B>
double ade(const Eigen::MatrixBase<A> & pred, const Eigen::MatrixBase<B> & gt)
{
  detail::require_matching_horizon(pred, gt);
  return (pred - gt).rowwise().norm().mean();
}

/// Euclidean distance at the final waypoint.
template <typename A, typename B>
double fde(const Eigen::MatrixBase<A> & pred, const Eigen::MatrixBase<B> & gt)
{
  detail::require_matching_horizon(pred, gt);
  const Eigen::Index last = pred.rows() - 1;
  return (pred.row(last) - gt.row(last)).norm();
}

/// minADE and minFDE over the set, each minimized independently.
inline MetricResult min_of_k(const PredictionSet & set, const WaypointSeq & gt)
{
  if (set.samples.empty()) {
    throw ConfigError("min_of_k over an empty prediction set");
  }
  MetricResult r{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                 set.k(), 1};
  for (const auto & sample : set.samples) {
    r.ade = std::min(r.ade, ade(sample, gt));
    r.fde = std::min(r.fde, fde(sample, gt));
  }
  return r;
}

}  // namespace sswnp

#endif  // SSWNP__METRICS_HPP_
