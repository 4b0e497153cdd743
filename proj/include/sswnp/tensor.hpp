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

#ifndef SSWNP__TENSOR_HPP_
#define SSWNP__TENSOR_HPP_

#include <Eigen/Core>

#include <map>
#include <string>

namespace sswnp
{

/// Dense row-major matrix. Every quantity in the toolkit is rank <= 2:
/// scalars are 1x1, feature vectors 1xN, batches are one row per agent.
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Tensor = Matrix<double>;

/// Named tensors, ordered by name so iteration order is reproducible.
template <typename Scalar>
using NamedTensors = std::map<std::string, Matrix<Scalar>, std::less<>>;

using TensorMap = NamedTensors<double>;

struct Shape
{
  Eigen::Index rows{0};
  Eigen::Index cols{0};

  friend bool operator==(const Shape &, const Shape &) = default;
};

template <typename Derived>
Shape shape_of(const Eigen::DenseBase<Derived> & m)
{
  return {m.rows(), m.cols()};
}

inline std::string to_string(const Shape & s)
{
  return "[" + std::to_string(s.rows) + "x" + std::to_string(s.cols) + "]";
}

}  // namespace sswnp

#endif  // SSWNP__TENSOR_HPP_
