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

#include "sswnp/adam.hpp"
#include "sswnp/errors.hpp"
#include "sswnp/grad_check.hpp"
#include "sswnp/graph.hpp"
#include "sswnp/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <set>
#include <vector>

namespace sswnp
{
namespace
{

Tensor mat(std::initializer_list<std::initializer_list<double>> rows)
{
  Tensor t(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto & row : rows) {
    Eigen::Index c = 0;
    for (double v : row) {
      t(r, c++) = v;
    }
    ++r;
  }
  return t;
}

Tensor random_tensor(RngStream & rng, Eigen::Index rows, Eigen::Index cols)
{
  Tensor t(rows, cols);
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    t.data()[i] = rng.uniform(-1.0, 1.0);
  }
  return t;
}

TEST(GraphForward, IdentityGraphReturnsInput)
{
  Graph g;
  g.input("t");
  const Tensor t = mat({{1.5, -2.0}, {0.25, 4.0}});
  EXPECT_EQ(g.forward({{"t", t}}), t);
}

TEST(GraphForward, MatmulWithIdentity)
{
  Graph g;
  const NodeId a = g.input("a");
  g.matmul(a, g.constant(Tensor::Identity(2, 2)));
  const Tensor m = mat({{1, 2}, {3, 4}});
  EXPECT_EQ(g.forward({{"a", m}}), m);
}

TEST(GraphForward, MeanSquaredErrorHandComputed)
{
  Graph g;
  g.mse(g.input("a"), g.input("b"));
  const Tensor out = g.forward({{"a", mat({{1, 3}})}, {"b", mat({{0, 1}})}});
  EXPECT_DOUBLE_EQ(out(0, 0), 2.5);
}

TEST(GraphForward, AddBroadcastsRowVectorOverBatch)
{
  Graph g;
  g.add(g.input("x"), g.input("b"));
  const Tensor out = g.forward({{"x", mat({{1, 2}, {3, 4}})}, {"b", mat({{10, 20}})}});
  EXPECT_EQ(out, mat({{11, 22}, {13, 24}}));
}

TEST(GraphForward, ConcatAlongBothAxes)
{
  Graph rows;
  rows.concat(rows.input("a"), rows.input("b"), Axis::kRows);
  EXPECT_EQ(rows.forward({{"a", mat({{1, 2}})}, {"b", mat({{3, 4}})}}), mat({{1, 2}, {3, 4}}));

  Graph cols;
  cols.concat(cols.input("a"), cols.input("b"), Axis::kCols);
  EXPECT_EQ(cols.forward({{"a", mat({{1}, {2}})}, {"b", mat({{3}, {4}})}}), mat({{1, 3}, {2, 4}}));
}

TEST(GraphForward, ShapeMismatchNamesTheNode)
{
  Graph g;
  const NodeId a = g.input("a");
  const NodeId b = g.input("b");
  const NodeId m = g.matmul(a, b);
  g.set_label(m, "bad_product");
  try {
    g.forward({{"a", Tensor::Zero(2, 3)}, {"b", Tensor::Zero(2, 3)}});
    FAIL() << "expected ShapeError";
  } catch (const ShapeError & e) {
    EXPECT_NE(std::string(e.what()).find("bad_product"), std::string::npos);
  }
}

TEST(GraphForward, BroadcastOnlyOverLeadingDimension)
{
  Graph g;
  g.add(g.input("x"), g.input("b"));
  EXPECT_THROW(g.forward({{"x", Tensor::Zero(2, 2)}, {"b", Tensor::Zero(2, 1)}}), ShapeError);
}

TEST(GraphForward, NonFiniteValueIsRejected)
{
  Graph g;
  g.tanh(g.input("x"));
  Tensor x = Tensor::Zero(1, 2);
  x(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(g.forward({{"x", x}}), NumericalError);
}

TEST(GraphForward, MissingBindingIsAnError)
{
  Graph g;
  g.input("x");
  EXPECT_THROW(g.forward({}), std::exception);
}

TEST(GraphForward, IsDeterministic)
{
  RngStream rng(3);
  Graph g;
  const NodeId w = g.parameter("w", random_tensor(rng, 4, 3));
  g.mean(g.tanh(g.matmul(g.input("x"), w)));
  const Tensor x = random_tensor(rng, 5, 4);
  const Tensor first = g.forward({{"x", x}});
  const Tensor second = g.forward({{"x", x}});
  EXPECT_EQ(std::memcmp(first.data(), second.data(), sizeof(double)), 0);
}

TEST(GraphBackward, ConstantFunctionGivesZeroGradient)
{
  Graph g;
  g.parameter("w", mat({{1, 2}}));
  g.set_output(g.constant(mat({{7}})));
  g.forward({});
  const auto grads = g.backward();
  EXPECT_EQ(grads.at("w"), Tensor::Zero(1, 2));
}

TEST(GraphBackward, LinearScalarFunction)
{
  Graph g;
  g.scale(g.parameter("w", mat({{0.7}})), 3.0);
  g.forward({});
  EXPECT_DOUBLE_EQ(g.backward().at("w")(0, 0), 3.0);
}

TEST(GraphBackward, RequiresForwardAndScalarOutput)
{
  Graph g;
  const NodeId w = g.parameter("w", mat({{1, 2}}));
  g.scale(w, 2.0);
  EXPECT_THROW(g.backward(), std::logic_error);
  g.forward({});
  EXPECT_THROW(g.backward(), ShapeError);
}

TEST(GraphBackward, DuplicateParameterNamesRejected)
{
  Graph g;
  g.parameter("w", mat({{1}}));
  EXPECT_THROW(g.parameter("w", mat({{1}})), std::invalid_argument);
}

TEST(GraphBackward, MseGradientMatchesClosedForm)
{
  // d/da mean((a-b)^2) = 2 (a-b) / n
  Graph g;
  g.mse(g.parameter("a", mat({{1, 3, -2}})), g.constant(mat({{0, 1, 1}})));
  g.forward({});
  const Tensor grad = g.backward().at("a");
  EXPECT_DOUBLE_EQ(grad(0, 0), 2.0 * 1 / 3);
  EXPECT_DOUBLE_EQ(grad(0, 1), 2.0 * 2 / 3);
  EXPECT_DOUBLE_EQ(grad(0, 2), 2.0 * -3 / 3);
}

/// Two-layer tanh network with MSE loss.
struct TwoLayer
{
  Graph graph;
  Graph::Bindings bindings;
};

TwoLayer two_layer_tanh(std::uint64_t seed)
{
  RngStream rng(seed);
  TwoLayer net;
  Graph & g = net.graph;
  const NodeId x = g.input("x");
  const NodeId h = g.tanh(g.add(
    g.matmul(x, g.parameter("w1", random_tensor(rng, 3, 5))), g.parameter("b1", random_tensor(rng, 1, 5))));
  const NodeId y = g.add(
    g.matmul(h, g.parameter("w2", random_tensor(rng, 5, 2))), g.parameter("b2", random_tensor(rng, 1, 2)));
  g.mse(y, g.input("target"));
  net.bindings = {{"x", random_tensor(rng, 4, 3)}, {"target", random_tensor(rng, 4, 2)}};
  return net;
}

TEST(GradCheck, LinearGraphIsExactUpToRoundoff)
{
  RngStream rng(5);
  Graph g;
  g.mean(g.scale(g.matmul(g.input("x"), g.parameter("w", random_tensor(rng, 3, 2))), 1.5));
  const Graph::Bindings b{{"x", random_tensor(rng, 4, 3)}};
  const GradCheckReport report = grad_check(g, b, 1e-5, 1e-6);
  EXPECT_TRUE(report.passed);
  EXPECT_LT(report.max_relative_error, 1e-10);
}

TEST(GradCheck, TwoLayerTanhNetPasses)
{
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    TwoLayer net = two_layer_tanh(seed);
    const GradCheckReport report = grad_check(net.graph, net.bindings, 1e-5, 1e-5);
    EXPECT_TRUE(report.passed) << "seed " << seed << " worst " << report.worst_parameter << " "
                               << report.max_relative_error;
  }
}

TEST(GradCheck, CorruptedGradientIsDetectedAndNamed)
{
  TwoLayer net = two_layer_tanh(1);
  net.graph.forward(net.bindings);
  auto grads = net.graph.backward();
  grads.at("w2")(1, 0) += 0.1;
  const GradCheckReport report = grad_check(net.graph, net.bindings, grads, 1e-5, 1e-5);
  EXPECT_FALSE(report.passed);
  EXPECT_EQ(report.failed(), std::vector<std::string>{"w2"});
  EXPECT_EQ(report.worst_parameter, "w2");
}

TEST(GradCheck, RejectsNonPositiveStep)
{
  TwoLayer net = two_layer_tanh(1);
  EXPECT_THROW(grad_check(net.graph, net.bindings, 0.0, 1e-5), std::invalid_argument);
}

TEST(GradCheck, ExtendedPrecisionOracleAgreesOnTanhNet)
{
  TwoLayer net = two_layer_tanh(2);
  const GradCheckReport report = grad_check_extended<long double>(net.graph, net.bindings, 1e-5, 1e-5);
  EXPECT_TRUE(report.passed);
  EXPECT_EQ(report.parameters.size(), 4u);
}

TEST(GraphCast, PreservesValuesAndStructure)
{
  TwoLayer net = two_layer_tanh(4);
  const double f = net.graph.forward(net.bindings)(0, 0);
  auto wide = net.graph.cast<long double>();
  const long double fw = wide.forward(cast_tensors<long double>(net.bindings))(0, 0);
  EXPECT_NEAR(static_cast<double>(fw), f, 1e-14);
  EXPECT_EQ(wide.parameter_names(), net.graph.parameter_names());
}

/// Random graph over the whole op set with inputs in [-1, 1].
struct RandomGraph
{
  Graph graph;
  Graph::Bindings bindings;
};

RandomGraph random_graph(std::uint64_t seed)
{
  RngStream rng = RngStream::keyed({seed, label_key("random-graph")});
  RandomGraph out;
  Graph & g = out.graph;
  const Eigen::Index batch = 1 + static_cast<Eigen::Index>(rng.below(4));
  const Eigen::Index in = 2 + static_cast<Eigen::Index>(rng.below(4));
  const Eigen::Index hidden = 2 + static_cast<Eigen::Index>(rng.below(5));
  const Eigen::Index out_dim = 1 + static_cast<Eigen::Index>(rng.below(3));

  out.bindings.emplace("x", random_tensor(rng, batch, in));
  out.bindings.emplace("y", random_tensor(rng, batch, out_dim));
  const NodeId x = g.input("x");
  NodeId h = g.add(
    g.matmul(x, g.parameter("w0", random_tensor(rng, in, hidden))),
    g.parameter("b0", random_tensor(rng, 1, hidden)));
  h = rng.below(2) == 0 ? g.tanh(h) : g.relu(h);
  // Second branch joined by concatenation.
  NodeId side = g.tanh(g.matmul(x, g.parameter("w_side", random_tensor(rng, in, 2))));
  h = g.concat(h, g.scale(side, rng.uniform(0.5, 2.0)), Axis::kCols);
  NodeId y = g.add(
    g.matmul(h, g.parameter("w1", random_tensor(rng, hidden + 2, out_dim))),
    g.parameter("b1", random_tensor(rng, 1, out_dim)));
  NodeId loss = g.mse(y, g.input("y"));
  if (rng.below(2) == 0) {
    loss = g.add(loss, g.scale(g.mean(g.tanh(y)), rng.uniform(-1.0, 1.0)));
  }
  if (rng.below(2) == 0) {
    const NodeId stacked = g.concat(y, g.input("y"), Axis::kRows);
    loss = g.add(loss, g.mean(g.tanh(stacked)));
  }
  g.set_output(loss);
  return out;
}

TEST(GradCheckProperty, HundredRandomGraphsOverTheOpSet)
{
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomGraph rg = random_graph(seed);
    const GradCheckReport report = grad_check(rg.graph, rg.bindings, 1e-5, 1e-5);
    EXPECT_TRUE(report.passed) << "graph " << seed << ": " << report.worst_parameter << " "
                               << report.max_relative_error;
  }
}

TEST(GraphProperty, BackwardIsLinearInTheLoss)
{
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RngStream rng(seed);
    const Tensor w = random_tensor(rng, 3, 2);
    const Tensor x = random_tensor(rng, 4, 3);
    const Tensor t1 = random_tensor(rng, 4, 2);
    const Tensor t2 = random_tensor(rng, 4, 2);

    auto gradient = [&](bool first, bool second) {
      Graph g;
      const NodeId y = g.tanh(g.matmul(g.input("x"), g.parameter("w", w)));
      const NodeId l1 = g.mse(y, g.constant(t1));
      const NodeId l2 = g.mean(g.relu(g.add(y, g.constant(t2))));
      if (first && second) {
        g.set_output(g.add(l1, l2));
      } else {
        g.set_output(first ? l1 : l2);
      }
      g.forward({{"x", x}});
      return g.backward().at("w");
    };
    const Tensor sum = gradient(true, true);
    const Tensor parts = gradient(true, false) + gradient(false, true);
    EXPECT_LT((sum - parts).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Adam, ZeroGradientLeavesParametersUnchanged)
{
  TensorMap params{{"w", mat({{1, -2}})}};
  const TensorMap grads{{"w", Tensor::Zero(1, 2)}};
  AdamState<double> state;
  adam_step(params, grads, state);
  EXPECT_EQ(params.at("w"), mat({{1, -2}}));
  EXPECT_EQ(state.step, 1u);
}

TEST(Adam, FirstStepClosedForm)
{
  TensorMap params{{"w", mat({{0.5}})}};
  AdamState<double> state;
  state.learning_rate = 0.01;
  adam_step(params, {{"w", mat({{2.0}})}}, state);
  // Bias-corrected first step: -lr * g / (|g| + eps).
  EXPECT_NEAR(params.at("w")(0, 0) - 0.5, -0.01 * 2.0 / (2.0 + 1e-8), 1e-15);
  EXPECT_NEAR(params.at("w")(0, 0) - 0.5, -0.01, 1e-10);
}

TEST(Adam, StepCounterAndAccumulatorShapes)
{
  TensorMap params{{"w", mat({{1, 2, 3}})}, {"b", mat({{0}})}};
  const TensorMap grads{{"w", mat({{0.1, 0.2, 0.3}})}, {"b", mat({{1}})}};
  AdamState<double> state;
  adam_step(params, grads, state);
  adam_step(params, grads, state);
  EXPECT_EQ(state.step, 2u);
  for (const auto & [name, value] : params) {
    EXPECT_EQ(shape_of(state.first_moment.at(name)), shape_of(value));
    EXPECT_EQ(shape_of(state.second_moment.at(name)), shape_of(value));
  }
}

TEST(Adam, ShapeMismatchRejected)
{
  TensorMap params{{"w", mat({{1, 2}})}};
  AdamState<double> state;
  EXPECT_THROW(adam_step(params, {{"w", mat({{1}})}}, state), ShapeError);
  EXPECT_THROW(adam_step(params, {}, state), ShapeError);
  EXPECT_EQ(state.step, 0u);
}

TEST(Rng, StreamsAreReproducibleAndKeyed)
{
  RngStream a = RngStream::keyed({1, 2, 3});
  RngStream b = RngStream::keyed({1, 2, 3});
  RngStream c = RngStream::keyed({1, 2, 4});
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    seen.insert(c.next_u64());
    EXPECT_EQ(seen.count(x), 0u);
  }
}

TEST(Rng, UniformAndBelowStayInRange)
{
  RngStream rng(9);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_LT(rng.below(7), 7u);
  }
}

TEST(Rng, NormalMoments)
{
  RngStream rng(11);
  const int n = 200000;
  double sum = 0.0;
  double sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  const double mean = sum / n;
  EXPECT_LT(std::abs(mean), 4.0 / std::sqrt(n));
  EXPECT_NEAR(std::sqrt(sq / n - mean * mean), 1.0, 0.01);
}

}  // namespace
}  // namespace sswnp
