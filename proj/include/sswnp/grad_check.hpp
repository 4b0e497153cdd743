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

#ifndef SSWNP__GRAD_CHECK_HPP_
#define SSWNP__GRAD_CHECK_HPP_

#include "sswnp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace sswnp
{

struct ParameterCheck
{
  std::string parameter;
  double max_relative_error{0.0};
  bool passed{true};
};

struct GradCheckReport
{
  std::vector<ParameterCheck> parameters;
  double max_relative_error{0.0};
  std::string worst_parameter;
  bool passed{true};

  /// Names of every parameter whose check failed.
  std::vector<std::string> failed() const
  {
    std::vector<std::string> names;
    for (const auto & p : parameters) {
      if (!p.passed) {
        names.push_back(p.parameter);
      }
    }
    return names;
  }
};

/// |a - b| / max(|a|, |b|, 1e-8)
inline double relative_error(double a, double b)
{
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-8});
}

/// Compares `analytic` against central differences (f(x+h) - f(x-h)) / 2h,
/// entry by entry, for every parameter of `graph`.
template <typename Scalar, typename AnalyticScalar>
GradCheckReport grad_check(
  BasicGraph<Scalar> & graph, const typename BasicGraph<Scalar>::Bindings & bindings,
  const NamedTensors<AnalyticScalar> & analytic, double h, double tol)
{
  if (!(h > 0.0)) {
    throw std::invalid_argument("grad_check step size must be positive");
  }
  GradCheckReport report;
  for (const std::string & name : graph.parameter_names()) {
    auto it = analytic.find(name);
    if (it == analytic.end()) {
      throw std::invalid_argument("no analytic gradient for parameter '" + name + "'");
    }
    const auto & grad = it->second;
    if (shape_of(grad) != shape_of(graph.parameter_value(name))) {
      throw ShapeError("gradient shape mismatch for parameter '" + name + "'");
    }

    ParameterCheck check{name};
    for (Eigen::Index r = 0; r < grad.rows(); ++r) {
      for (Eigen::Index c = 0; c < grad.cols(); ++c) {
        const Scalar original = graph.parameter_value(name)(r, c);
        graph.mutable_parameter_value(name)(r, c) = original + static_cast<Scalar>(h);
        const Scalar plus = graph.forward(bindings)(0, 0);
        graph.mutable_parameter_value(name)(r, c) = original - static_cast<Scalar>(h);
        const Scalar minus = graph.forward(bindings)(0, 0);
        graph.mutable_parameter_value(name)(r, c) = original;

        const double numeric = static_cast<double>((plus - minus) / (2 * static_cast<Scalar>(h)));
        const double err = relative_error(static_cast<double>(grad(r, c)), numeric);
        check.max_relative_error = std::max(check.max_relative_error, err);
      }
    }
    check.passed = check.max_relative_error < tol;
    if (check.max_relative_error >= report.max_relative_error) {
      report.max_relative_error = check.max_relative_error;
      report.worst_parameter = name;
    }
    report.passed = report.passed && check.passed;
    report.parameters.push_back(std::move(check));
  }
  // Leave the cache consistent with the unperturbed parameters.
  graph.forward(bindings);
  return report;
}

template <typename Scalar>
GradCheckReport grad_check(
  BasicGraph<Scalar> & graph, const typename BasicGraph<Scalar>::Bindings & bindings, double h,
  double tol)
{
  graph.forward(bindings);
  const auto analytic = graph.backward();
  return grad_check(graph, bindings, analytic, h, tol);
}

/// Checks the gradients `graph` computes in its own precision against
/// central differences evaluated on an OracleScalar copy of the graph.
/// With a wider OracleScalar the finite-difference roundoff, about
/// eps * |f| / h, stops masking the comparison on near-zero entries.
template <typename OracleScalar, typename Scalar>
GradCheckReport grad_check_extended(
  BasicGraph<Scalar> & graph, const typename BasicGraph<Scalar>::Bindings & bindings, double h,
  double tol)
{
  graph.forward(bindings);
  const auto analytic = graph.backward();
  BasicGraph<OracleScalar> oracle = graph.template cast<OracleScalar>();
  return grad_check(oracle, cast_tensors<OracleScalar>(bindings), analytic, h, tol);
}

}  // namespace sswnp

#endif  // SSWNP__GRAD_CHECK_HPP_
