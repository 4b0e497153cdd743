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

#ifndef SSWNP__GRAPH_HPP_
#define SSWNP__GRAPH_HPP_

#include "sswnp/errors.hpp"
#include "sswnp/tensor.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sswnp
{

/// The closed operation set. Backward rules exist for exactly these.
enum class Op {
  kInput,
  kParameter,
  kConstant,
  kMatMul,
  kAdd,
  kScale,
  kTanh,
  kRelu,
  kMse,
  kMean,
  kConcat,
};

enum class Axis { kRows, kCols };

const char * op_name(Op op);

struct NodeId
{
  std::size_t index{0};

  friend bool operator==(const NodeId &, const NodeId &) = default;
};

/// Reverse-mode differentiable expression graph over dense matrices.
///
/// Nodes are appended in construction order, so inputs always precede the
/// nodes that consume them and a single reverse sweep is a valid backward
/// pass. Input shapes are only known once `forward` receives bindings; all
/// shape checks therefore happen there and name the offending node.
///
/// `add` broadcasts a 1xN operand over the rows of an MxN operand (the
/// leading, batch dimension). Nothing else broadcasts.
///
/// A graph instance caches forward values and is not safe for concurrent use.
template <typename Scalar>
class BasicGraph
{
public:
  using Value = Matrix<Scalar>;
  using Bindings = NamedTensors<Scalar>;
  using Gradients = NamedTensors<Scalar>;

  NodeId input(std::string name)
  {
    Node node{Op::kInput};
    node.name = std::move(name);
    return push(std::move(node));
  }

  NodeId parameter(std::string name, Value initial)
  {
    if (find_parameter(name) != nodes_.size()) {
      throw std::invalid_argument("duplicate parameter '" + name + "'");
    }
    Node node{Op::kParameter};
    node.name = std::move(name);
    node.value = std::move(initial);
    node.requires_grad = true;
    return push(std::move(node));
  }

  NodeId constant(Value value)
  {
    Node node{Op::kConstant};
    node.value = std::move(value);
    return push(std::move(node));
  }

  NodeId matmul(NodeId a, NodeId b) { return binary(Op::kMatMul, a, b); }
  NodeId add(NodeId a, NodeId b) { return binary(Op::kAdd, a, b); }
  NodeId mse(NodeId a, NodeId b) { return binary(Op::kMse, a, b); }
  NodeId tanh(NodeId a) { return unary(Op::kTanh, a); }
  NodeId relu(NodeId a) { return unary(Op::kRelu, a); }
  NodeId mean(NodeId a) { return unary(Op::kMean, a); }

  NodeId scale(NodeId a, Scalar factor)
  {
    Node node = make_op(Op::kScale, {a});
    node.factor = factor;
    return push(std::move(node));
  }

  NodeId concat(NodeId a, NodeId b, Axis axis)
  {
    Node node = make_op(Op::kConcat, {a, b});
    node.axis = axis;
    return push(std::move(node));
  }

  /// Designates the node whose value `forward` returns. Defaults to the last node.
  void set_output(NodeId id)
  {
    check_id(id);
    output_ = id.index;
    has_output_ = true;
  }

  NodeId output() const
  {
    if (nodes_.empty()) {
      throw std::logic_error("graph has no nodes");
    }
    return {has_output_ ? output_ : nodes_.size() - 1};
  }

  std::size_t size() const noexcept { return nodes_.size(); }
  Op op(NodeId id) const { return at(id).op; }

  /// Structurally identical graph over another scalar type. Parameter and
  /// constant values are converted; cached forward values are dropped.
  template <typename Other>
  BasicGraph<Other> cast() const
  {
    BasicGraph<Other> out;
    out.nodes_.reserve(nodes_.size());
    for (const Node & node : nodes_) {
      typename BasicGraph<Other>::Node copy{node.op};
      std::copy(std::begin(node.inputs), std::end(node.inputs), std::begin(copy.inputs));
      copy.arity = node.arity;
      copy.factor = static_cast<Other>(node.factor);
      copy.axis = node.axis;
      copy.requires_grad = node.requires_grad;
      copy.name = node.name;
      if (node.op == Op::kParameter || node.op == Op::kConstant) {
        copy.value = node.value.template cast<Other>();
      }
      out.nodes_.push_back(std::move(copy));
    }
    out.output_ = output_;
    out.has_output_ = has_output_;
    return out;
  }

  /// Label used in diagnostics. Inputs and parameters carry their own name.
  void set_label(NodeId id, std::string label) { nodes_.at(id.index).name = std::move(label); }

  const Value & forward(const Bindings & bindings)
  {
    forward_done_ = false;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      evaluate(i, bindings);
      if (!nodes_[i].value.allFinite()) {
        throw NumericalError("non-finite value at " + describe(i));
      }
    }
    forward_done_ = true;
    return nodes_[output().index].value;
  }

  /// Value cached by the last forward pass (or the stored value of a parameter/constant).
  const Value & value(NodeId id) const
  {
    const Node & node = at(id);
    if (!forward_done_ && node.op != Op::kParameter && node.op != Op::kConstant) {
      throw std::logic_error("forward has not been run");
    }
    return node.value;
  }

  /// Gradient of the scalar output with respect to every parameter node.
  Gradients backward()
  {
    if (!forward_done_) {
      throw std::logic_error("backward called before forward");
    }
    const std::size_t out = output().index;
    if (nodes_[out].value.rows() != 1 || nodes_[out].value.cols() != 1) {
      throw ShapeError(
        "backward requires a scalar output, " + describe(out) + " has shape " +
        to_string(shape_of(nodes_[out].value)));
    }

    std::vector<Value> grads(nodes_.size());
    grads[out] = Value::Ones(1, 1);
    for (std::size_t i = out + 1; i-- > 0;) {
      if (grads[i].size() == 0 || !nodes_[i].requires_grad) {
        continue;
      }
      propagate(i, grads);
    }

    Gradients result;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (nodes_[i].op != Op::kParameter) {
        continue;
      }
      if (grads[i].size() == 0) {
        result.emplace(nodes_[i].name, Value::Zero(nodes_[i].value.rows(), nodes_[i].value.cols()));
      } else {
        result.emplace(nodes_[i].name, std::move(grads[i]));
      }
    }
    return result;
  }

  std::vector<std::string> parameter_names() const
  {
    std::vector<std::string> names;
    for (const auto & node : nodes_) {
      if (node.op == Op::kParameter) {
        names.push_back(node.name);
      }
    }
    return names;
  }

  const Value & parameter_value(std::string_view name) const
  {
    return nodes_[require_parameter(name)].value;
  }

  void set_parameter_value(std::string_view name, Value v)
  {
    Node & node = nodes_[require_parameter(name)];
    if (shape_of(v) != shape_of(node.value)) {
      throw ShapeError(
        "parameter '" + node.name + "' expects shape " + to_string(shape_of(node.value)) +
        ", got " + to_string(shape_of(v)));
    }
    node.value = std::move(v);
    forward_done_ = false;
  }

  /// Mutable access for in-place perturbation. Invalidates cached forward values.
  Value & mutable_parameter_value(std::string_view name)
  {
    forward_done_ = false;
    return nodes_[require_parameter(name)].value;
  }

private:
  template <typename>
  friend class BasicGraph;

  struct Node
  {
    explicit Node(Op kind) : op(kind) {}

    Op op;
    std::size_t inputs[2]{0, 0};
    std::size_t arity{0};
    Scalar factor{1};
    Axis axis{Axis::kRows};
    bool requires_grad{false};
    std::string name;
    Value value;
  };

  NodeId push(Node node)
  {
    nodes_.push_back(std::move(node));
    forward_done_ = false;
    return {nodes_.size() - 1};
  }

  Node make_op(Op op, std::initializer_list<NodeId> inputs)
  {
    Node node{op};
    for (NodeId id : inputs) {
      check_id(id);
      node.inputs[node.arity++] = id.index;
      node.requires_grad = node.requires_grad || nodes_[id.index].requires_grad;
    }
    return node;
  }

  NodeId unary(Op op, NodeId a) { return push(make_op(op, {a})); }
  NodeId binary(Op op, NodeId a, NodeId b) { return push(make_op(op, {a, b})); }

  void check_id(NodeId id) const
  {
    if (id.index >= nodes_.size()) {
      throw std::out_of_range("unknown node id " + std::to_string(id.index));
    }
  }

  const Node & at(NodeId id) const
  {
    check_id(id);
    return nodes_[id.index];
  }

  std::size_t find_parameter(std::string_view name) const
  {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (nodes_[i].op == Op::kParameter && nodes_[i].name == name) {
        return i;
      }
    }
    return nodes_.size();
  }

  std::size_t require_parameter(std::string_view name) const
  {
    const std::size_t i = find_parameter(name);
    if (i == nodes_.size()) {
      throw std::out_of_range("unknown parameter '" + std::string(name) + "'");
    }
    return i;
  }

  std::string describe(std::size_t i) const
  {
    std::string s = "node " + std::to_string(i) + " (" + op_name(nodes_[i].op);
    if (!nodes_[i].name.empty()) {
      s += " '" + nodes_[i].name + "'";
    }
    return s + ")";
  }

  [[noreturn]] void shape_fail(std::size_t i, const std::string & what) const
  {
    throw ShapeError(describe(i) + ": " + what);
  }

  void evaluate(std::size_t i, const Bindings & bindings)
  {
    Node & node = nodes_[i];
    const Value * a = node.arity > 0 ? &nodes_[node.inputs[0]].value : nullptr;
    const Value * b = node.arity > 1 ? &nodes_[node.inputs[1]].value : nullptr;
    switch (node.op) {
      case Op::kInput: {
        auto it = bindings.find(node.name);
        if (it == bindings.end()) {
          shape_fail(i, "no binding supplied");
        }
        node.value = it->second;
        break;
      }
      case Op::kParameter:
      case Op::kConstant:
        break;
      case Op::kMatMul:
        if (a->cols() != b->rows()) {
          shape_fail(
            i, "inner dimensions differ, " + to_string(shape_of(*a)) + " * " +
                 to_string(shape_of(*b)));
        }
        node.value.noalias() = (*a) * (*b);
        break;
      case Op::kAdd:
        if (shape_of(*a) == shape_of(*b)) {
          node.value = *a + *b;
        } else if (b->rows() == 1 && b->cols() == a->cols()) {
          node.value = a->rowwise() + b->row(0);
        } else if (a->rows() == 1 && a->cols() == b->cols()) {
          node.value = b->rowwise() + a->row(0);
        } else {
          shape_fail(
            i, "cannot add " + to_string(shape_of(*a)) + " and " + to_string(shape_of(*b)));
        }
        break;
      case Op::kScale:
        node.value = node.factor * (*a);
        break;
      case Op::kTanh:
        node.value = a->array().tanh().matrix();
        break;
      case Op::kRelu:
        node.value = a->cwiseMax(Scalar(0));
        break;
      case Op::kMse:
        if (shape_of(*a) != shape_of(*b) || a->size() == 0) {
          shape_fail(
            i, "mse operands " + to_string(shape_of(*a)) + " and " + to_string(shape_of(*b)));
        }
        node.value.resize(1, 1);
        node.value(0, 0) = (*a - *b).squaredNorm() / static_cast<Scalar>(a->size());
        break;
      case Op::kMean:
        if (a->size() == 0) {
          shape_fail(i, "mean of empty tensor");
        }
        node.value.resize(1, 1);
        node.value(0, 0) = a->mean();
        break;
      case Op::kConcat:
        if (node.axis == Axis::kRows) {
          if (a->cols() != b->cols()) {
            shape_fail(
              i, "row concat needs equal columns, " + to_string(shape_of(*a)) + " vs " +
                   to_string(shape_of(*b)));
          }
          node.value.resize(a->rows() + b->rows(), a->cols());
          node.value << *a, *b;
        } else {
          if (a->rows() != b->rows()) {
            shape_fail(
              i, "column concat needs equal rows, " + to_string(shape_of(*a)) + " vs " +
                   to_string(shape_of(*b)));
          }
          node.value.resize(a->rows(), a->cols() + b->cols());
          node.value << *a, *b;
        }
        break;
    }
  }

  static void accumulate(Value & slot, const Value & contribution)
  {
    if (slot.size() == 0) {
      slot = contribution;
    } else {
      slot += contribution;
    }
  }

  void send(std::vector<Value> & grads, std::size_t target, const Value & g) const
  {
    if (nodes_[target].requires_grad) {
      accumulate(grads[target], g);
    }
  }

  void propagate(std::size_t i, std::vector<Value> & grads) const
  {
    const Node & node = nodes_[i];
    const Value & g = grads[i];
    const std::size_t ia = node.arity > 0 ? node.inputs[0] : 0;
    const std::size_t ib = node.arity > 1 ? node.inputs[1] : 0;
    switch (node.op) {
      case Op::kInput:
      case Op::kParameter:
      case Op::kConstant:
        break;
      case Op::kMatMul: {
        const Value & a = nodes_[ia].value;
        const Value & b = nodes_[ib].value;
        if (nodes_[ia].requires_grad) {
          Value ga = g * b.transpose();
          accumulate(grads[ia], ga);
        }
        if (nodes_[ib].requires_grad) {
          Value gb = a.transpose() * g;
          accumulate(grads[ib], gb);
        }
        break;
      }
      case Op::kAdd: {
        const Value & a = nodes_[ia].value;
        const Value & b = nodes_[ib].value;
        send(grads, ia, a.rows() == g.rows() ? g : Value(g.colwise().sum()));
        send(grads, ib, b.rows() == g.rows() ? g : Value(g.colwise().sum()));
        break;
      }
      case Op::kScale:
        send(grads, ia, Value(node.factor * g));
        break;
      case Op::kTanh: {
        const Value & y = node.value;
        send(grads, ia, Value(g.cwiseProduct((Scalar(1) - y.array().square()).matrix())));
        break;
      }
      case Op::kRelu: {
        const Value & x = nodes_[ia].value;
        send(grads, ia, Value((x.array() > Scalar(0)).select(g, Scalar(0))));
        break;
      }
      case Op::kMse: {
        const Value & a = nodes_[ia].value;
        const Value & b = nodes_[ib].value;
        const Scalar coeff = Scalar(2) * g(0, 0) / static_cast<Scalar>(a.size());
        Value ga = coeff * (a - b);
        if (nodes_[ib].requires_grad) {
          send(grads, ib, Value(-ga));
        }
        send(grads, ia, ga);
        break;
      }
      case Op::kMean: {
        const Value & a = nodes_[ia].value;
        send(
          grads, ia,
          Value::Constant(a.rows(), a.cols(), g(0, 0) / static_cast<Scalar>(a.size())));
        break;
      }
      case Op::kConcat: {
        const Value & a = nodes_[ia].value;
        const Value & b = nodes_[ib].value;
        if (node.axis == Axis::kRows) {
          send(grads, ia, Value(g.topRows(a.rows())));
          send(grads, ib, Value(g.bottomRows(b.rows())));
        } else {
          send(grads, ia, Value(g.leftCols(a.cols())));
          send(grads, ib, Value(g.rightCols(b.cols())));
        }
        break;
      }
    }
  }

  std::vector<Node> nodes_;
  std::size_t output_{0};
  bool has_output_{false};
  bool forward_done_{false};
};

using Graph = BasicGraph<double>;

/// Element-type conversion of a tensor map (e.g. graph bindings).
template <typename Other, typename Scalar>
NamedTensors<Other> cast_tensors(const NamedTensors<Scalar> & tensors)
{
  NamedTensors<Other> out;
  for (const auto & [name, value] : tensors) {
    out.emplace(name, value.template cast<Other>());
  }
  return out;
}

inline const char * op_name(Op op)
{
  switch (op) {
    case Op::kInput:
      return "input";
    case Op::kParameter:
      return "parameter";
    case Op::kConstant:
      return "constant";
    case Op::kMatMul:
      return "matmul";
    case Op::kAdd:
      return "add";
    case Op::kScale:
      return "scale";
    case Op::kTanh:
      return "tanh";
    case Op::kRelu:
      return "relu";
    case Op::kMse:
      return "mse";
    case Op::kMean:
      return "mean";
    case Op::kConcat:
      return "concat";
  }
  return "unknown";
}

}  // namespace sswnp

#endif  // SSWNP__GRAPH_HPP_
