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

#ifndef SSWNP__ADAM_HPP_
#define SSWNP__ADAM_HPP_

#include "sswnp/errors.hpp"
#include "sswnp/tensor.hpp"

#include <cmath>
#include <cstdint>

namespace sswnp
{

template <typename Scalar>
struct AdamState
{
  std::uint64_t step{0};
  NamedTensors<Scalar> first_moment;
  NamedTensors<Scalar> second_moment;
  Scalar learning_rate{Scalar(1e-3)};
  Scalar beta1{Scalar(0.9)};
  Scalar beta2{Scalar(0.999)};
  Scalar epsilon{Scalar(1e-8)};
};

/// One bias-corrected Adam update of every entry in `params`.
///
/// Accumulators are created lazily with the parameter's shape on the first
/// step. `grads` must hold a tensor of identical shape for every parameter.
template <typename Scalar>
void adam_step(
  NamedTensors<Scalar> & params, const NamedTensors<Scalar> & grads, AdamState<Scalar> & state)
{
  for (const auto & [name, value] : params) {
    auto g = grads.find(name);
    if (g == grads.end()) {
      throw ShapeError("missing gradient for parameter '" + name + "'");
    }
    if (shape_of(g->second) != shape_of(value)) {
      throw ShapeError(
        "gradient for '" + name + "' has shape " + to_string(shape_of(g->second)) +
        ", parameter has " + to_string(shape_of(value)));
    }
    auto m = state.first_moment.find(name);
    if (m != state.first_moment.end() && shape_of(m->second) != shape_of(value)) {
      throw ShapeError("optimizer state for '" + name + "' does not match parameter shape");
    }
  }

  state.step += 1;
  const Scalar t = static_cast<Scalar>(state.step);
  const Scalar correction1 = Scalar(1) - std::pow(state.beta1, t);
  const Scalar correction2 = Scalar(1) - std::pow(state.beta2, t);

  for (auto & [name, value] : params) {
    const auto & g = grads.find(name)->second.array();
    auto [m_it, m_new] = state.first_moment.try_emplace(name);
    auto [v_it, v_new] = state.second_moment.try_emplace(name);
    if (m_new) {
      m_it->second = Matrix<Scalar>::Zero(value.rows(), value.cols());
    }
    if (v_new) {
      v_it->second = Matrix<Scalar>::Zero(value.rows(), value.cols());
    }
    auto m = m_it->second.array();
    auto v = v_it->second.array();
    m = state.beta1 * m + (Scalar(1) - state.beta1) * g;
    v = state.beta2 * v + (Scalar(1) - state.beta2) * g.square();
    value.array() -=
      state.learning_rate * (m / correction1) / ((v / correction2).sqrt() + state.epsilon);
  }
}

}  // namespace sswnp

#endif  // SSWNP__ADAM_HPP_
