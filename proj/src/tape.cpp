#include "graphirl/tape.hpp"

#include <cmath>
#include <string>

namespace graphirl {

NodeId Tape::push(Op op, std::vector<NodeId> inputs, Matrix value, double c) {
  Node n;
  n.op = op;
  n.inputs = std::move(inputs);
  n.value = std::move(value);
  n.c = c;
  for (NodeId in : n.inputs) {
    if (nodes_[in].requires_grad) {
      n.requires_grad = true;
      break;
    }
  }
  nodes_.push_back(std::move(n));
  return static_cast<NodeId>(nodes_.size()) - 1;
}

NodeId Tape::param(const Matrix& value) {
  NodeId id = push(Op::kLeaf, {}, value);
  nodes_[id].requires_grad = true;
  return id;
}

NodeId Tape::constant(const Matrix& value) { return push(Op::kLeaf, {}, value); }

NodeId Tape::affine(NodeId w, NodeId b, NodeId x) {
  Matrix y;
  affine_forward(value(w), value(b), value(x), y);
  return push(Op::kAffine, {w, b, x}, std::move(y));
}

NodeId Tape::relu(NodeId x) {
  Matrix y;
  relu_forward(value(x), y);
  return push(Op::kRelu, {x}, std::move(y));
}

NodeId Tape::add(NodeId a, NodeId b) {
  const Matrix& va = value(a);
  const Matrix& vb = value(b);
  if (!va.same_shape(vb)) throw ShapeError("add: shape mismatch");
  Matrix y = va;
  for (size_t i = 0; i < y.size(); ++i) y.data[i] += vb.data[i];
  return push(Op::kAdd, {a, b}, std::move(y));
}

NodeId Tape::concat(NodeId a, NodeId b) {
  const Matrix& va = value(a);
  const Matrix& vb = value(b);
  if (va.cols != 1 || vb.cols != 1) throw ShapeError("concat: expects column vectors");
  Matrix y = Matrix::vector(va.rows + vb.rows);
  for (int i = 0; i < va.rows; ++i) y.data[i] = va.data[i];
  for (int i = 0; i < vb.rows; ++i) y.data[va.rows + i] = vb.data[i];
  return push(Op::kConcat, {a, b}, std::move(y));
}

NodeId Tape::sum_list(const std::vector<NodeId>& xs) {
  if (xs.empty()) throw ContractError("sum_list: empty input list");
  Matrix y = value(xs[0]);
  for (size_t k = 1; k < xs.size(); ++k) {
    const Matrix& vk = value(xs[k]);
    if (!vk.same_shape(y)) throw ShapeError("sum_list: shape mismatch");
    for (size_t i = 0; i < y.size(); ++i) y.data[i] += vk.data[i];
  }
  return push(Op::kSumList, xs, std::move(y));
}

NodeId Tape::mean_list(const std::vector<NodeId>& xs) {
  if (xs.empty()) throw ContractError("mean_list: empty input list");
  Matrix y = value(xs[0]);
  for (size_t k = 1; k < xs.size(); ++k) {
    const Matrix& vk = value(xs[k]);
    if (!vk.same_shape(y)) throw ShapeError("mean_list: shape mismatch");
    for (size_t i = 0; i < y.size(); ++i) y.data[i] += vk.data[i];
  }
  const double inv = 1.0 / static_cast<double>(xs.size());
  for (size_t i = 0; i < y.size(); ++i) y.data[i] *= inv;
  return push(Op::kMeanList, xs, std::move(y));
}

NodeId Tape::scale(NodeId x, double c) {
  Matrix y = value(x);
  for (double& v : y.data) v *= c;
  return push(Op::kScaleConst, {x}, std::move(y), c);
}

NodeId Tape::add_const(NodeId x, double c) {
  Matrix y = value(x);
  for (double& v : y.data) v += c;
  return push(Op::kAddConst, {x}, std::move(y), c);
}

NodeId Tape::stack(const std::vector<NodeId>& scalars) {
  if (scalars.empty()) throw ContractError("stack: empty input list");
  Matrix y = Matrix::vector(static_cast<int>(scalars.size()));
  for (size_t k = 0; k < scalars.size(); ++k) {
    const Matrix& vk = value(scalars[k]);
    if (!vk.is_scalar()) throw ShapeError("stack: inputs must be scalars");
    y.data[k] = vk.data[0];
  }
  return push(Op::kStack, scalars, std::move(y));
}

NodeId Tape::softmax(NodeId logits, double temperature) {
  Matrix y;
  softmax_forward(value(logits), temperature, y);
  return push(Op::kSoftmax, {logits}, std::move(y), temperature);
}

NodeId Tape::lincomb(NodeId weights, const std::vector<NodeId>& xs) {
  const Matrix& w = value(weights);
  if (w.cols != 1 || static_cast<size_t>(w.rows) != xs.size()) {
    throw ShapeError("lincomb: weight count must match input count");
  }
  Matrix y = value(xs[0]);
  for (double& v : y.data) v *= w.data[0];
  for (size_t k = 1; k < xs.size(); ++k) {
    const Matrix& vk = value(xs[k]);
    if (!vk.same_shape(y)) throw ShapeError("lincomb: shape mismatch");
    for (size_t i = 0; i < y.size(); ++i) y.data[i] += w.data[k] * vk.data[i];
  }
  std::vector<NodeId> inputs;
  inputs.reserve(xs.size() + 1);
  inputs.push_back(weights);
  inputs.insert(inputs.end(), xs.begin(), xs.end());
  return push(Op::kLincomb, std::move(inputs), std::move(y));
}

NodeId Tape::dot(NodeId a, NodeId b) {
  const Matrix& va = value(a);
  const Matrix& vb = value(b);
  if (!va.same_shape(vb)) throw ShapeError("dot: shape mismatch");
  double acc = 0.0;
  for (size_t i = 0; i < va.size(); ++i) acc += va.data[i] * vb.data[i];
  return push(Op::kDot, {a, b}, Matrix::scalar(acc));
}

NodeId Tape::sq_dist(NodeId a, NodeId b) {
  return push(Op::kSqDist, {a, b}, Matrix::scalar(squared_distance(value(a), value(b))));
}

NodeId Tape::square(NodeId x) {
  Matrix y = value(x);
  for (double& v : y.data) v *= v;
  return push(Op::kSquare, {x}, std::move(y));
}

NodeId Tape::reduce_sum(NodeId x) {
  const Matrix& vx = value(x);
  double acc = 0.0;
  for (double v : vx.data) acc += v;
  return push(Op::kReduceSum, {x}, Matrix::scalar(acc));
}

Matrix& Tape::grad_buf(NodeId id) {
  if (grads_[id].size() == 0) {
    const Matrix& v = nodes_[id].value;
    grads_[id] = Matrix(v.rows, v.cols);
  }
  return grads_[id];
}

const Matrix& Tape::grad(NodeId id) { return grad_buf(id); }

void Tape::backward(NodeId loss) {
  if (!value(loss).is_scalar()) throw ContractError("backward: loss node must be scalar");
  grads_.assign(nodes_.size(), Matrix());
  grad_buf(loss).data[0] = 1.0;
  for (NodeId id = loss; id >= 0; --id) {
    if (grads_[id].size() == 0) continue;     // not on a path to the loss
    if (!nodes_[id].requires_grad) continue;  // nothing upstream wants gradient
    backward_node(id);
  }
}

void Tape::backward_node(NodeId id) {
  const Node& n = nodes_[id];
  const Matrix& gy = grads_[id];
  auto wants = [&](NodeId in) { return nodes_[in].requires_grad; };

  switch (n.op) {
    case Op::kLeaf:
      break;
    case Op::kAffine: {
      const NodeId w = n.inputs[0], b = n.inputs[1], x = n.inputs[2];
      // a scratch buffer for any operand that does not want gradient
      Matrix scratch_w, scratch_b, scratch_x;
      Matrix& gw = wants(w) ? grad_buf(w) : (scratch_w = Matrix(value(w).rows, value(w).cols));
      Matrix& gb = wants(b) ? grad_buf(b) : (scratch_b = Matrix(value(b).rows, value(b).cols));
      Matrix& gx = wants(x) ? grad_buf(x) : (scratch_x = Matrix(value(x).rows, value(x).cols));
      affine_backward(value(w), value(x), gy, gw, gb, gx);
      break;
    }
    case Op::kRelu: {
      const NodeId x = n.inputs[0];
      if (!wants(x)) break;
      Matrix& gx = grad_buf(x);
      const Matrix& vx = value(x);
      for (size_t i = 0; i < gx.size(); ++i) {
        if (vx.data[i] > 0.0) gx.data[i] += gy.data[i];
      }
      break;
    }
    case Op::kAdd: {
      for (NodeId in : n.inputs) {
        if (!wants(in)) continue;
        Matrix& g = grad_buf(in);
        for (size_t i = 0; i < g.size(); ++i) g.data[i] += gy.data[i];
      }
      break;
    }
    case Op::kConcat: {
      const NodeId a = n.inputs[0], b = n.inputs[1];
      const int na = value(a).rows;
      if (wants(a)) {
        Matrix& ga = grad_buf(a);
        for (int i = 0; i < na; ++i) ga.data[i] += gy.data[i];
      }
      if (wants(b)) {
        Matrix& gb = grad_buf(b);
        for (size_t i = 0; i < gb.size(); ++i) gb.data[i] += gy.data[na + i];
      }
      break;
    }
    case Op::kSumList: {
      for (NodeId in : n.inputs) {
        if (!wants(in)) continue;
        Matrix& g = grad_buf(in);
        for (size_t i = 0; i < g.size(); ++i) g.data[i] += gy.data[i];
      }
      break;
    }
    case Op::kMeanList: {
      const double inv = 1.0 / static_cast<double>(n.inputs.size());
      for (NodeId in : n.inputs) {
        if (!wants(in)) continue;
        Matrix& g = grad_buf(in);
        for (size_t i = 0; i < g.size(); ++i) g.data[i] += inv * gy.data[i];
      }
      break;
    }
    case Op::kScaleConst: {
      const NodeId x = n.inputs[0];
      if (!wants(x)) break;
      Matrix& gx = grad_buf(x);
      for (size_t i = 0; i < gx.size(); ++i) gx.data[i] += n.c * gy.data[i];
      break;
    }
    case Op::kAddConst: {
      const NodeId x = n.inputs[0];
      if (!wants(x)) break;
      Matrix& gx = grad_buf(x);
      for (size_t i = 0; i < gx.size(); ++i) gx.data[i] += gy.data[i];
      break;
    }
    case Op::kStack: {
      for (size_t k = 0; k < n.inputs.size(); ++k) {
        if (!wants(n.inputs[k])) continue;
        grad_buf(n.inputs[k]).data[0] += gy.data[k];
      }
      break;
    }
    case Op::kSoftmax: {
      const NodeId x = n.inputs[0];
      if (!wants(x)) break;
      const Matrix& y = n.value;
      double dot_gy_y = 0.0;
      for (size_t i = 0; i < y.size(); ++i) dot_gy_y += gy.data[i] * y.data[i];
      Matrix& gx = grad_buf(x);
      for (size_t i = 0; i < y.size(); ++i) {
        gx.data[i] += y.data[i] * (gy.data[i] - dot_gy_y) / n.c;
      }
      break;
    }
    case Op::kLincomb: {
      const NodeId w = n.inputs[0];
      const Matrix& vw = value(w);
      for (size_t k = 1; k < n.inputs.size(); ++k) {
        const NodeId xk = n.inputs[k];
        const Matrix& vx = value(xk);
        if (wants(w)) {
          double acc = 0.0;
          for (size_t i = 0; i < vx.size(); ++i) acc += gy.data[i] * vx.data[i];
          grad_buf(w).data[k - 1] += acc;
        }
        if (wants(xk)) {
          Matrix& gx = grad_buf(xk);
          const double wk = vw.data[k - 1];
          for (size_t i = 0; i < gx.size(); ++i) gx.data[i] += wk * gy.data[i];
        }
      }
      break;
    }
    case Op::kDot: {
      const NodeId a = n.inputs[0], b = n.inputs[1];
      const double g = gy.data[0];
      if (wants(a)) {
        Matrix& ga = grad_buf(a);
        const Matrix& vb = value(b);
        for (size_t i = 0; i < ga.size(); ++i) ga.data[i] += g * vb.data[i];
      }
      if (wants(b)) {
        Matrix& gb = grad_buf(b);
        const Matrix& va = value(a);
        for (size_t i = 0; i < gb.size(); ++i) gb.data[i] += g * va.data[i];
      }
      break;
    }
    case Op::kSqDist: {
      const NodeId a = n.inputs[0], b = n.inputs[1];
      const double g = gy.data[0];
      const Matrix& va = value(a);
      const Matrix& vb = value(b);
      if (wants(a)) {
        Matrix& ga = grad_buf(a);
        for (size_t i = 0; i < ga.size(); ++i) ga.data[i] += g * 2.0 * (va.data[i] - vb.data[i]);
      }
      if (wants(b)) {
        Matrix& gb = grad_buf(b);
        for (size_t i = 0; i < gb.size(); ++i) gb.data[i] -= g * 2.0 * (va.data[i] - vb.data[i]);
      }
      break;
    }
    case Op::kSquare: {
      const NodeId x = n.inputs[0];
      if (!wants(x)) break;
      Matrix& gx = grad_buf(x);
      const Matrix& vx = value(x);
      for (size_t i = 0; i < gx.size(); ++i) gx.data[i] += 2.0 * vx.data[i] * gy.data[i];
      break;
    }
    case Op::kReduceSum: {
      const NodeId x = n.inputs[0];
      if (!wants(x)) break;
      Matrix& gx = grad_buf(x);
      const double g = gy.data[0];
      for (size_t i = 0; i < gx.size(); ++i) gx.data[i] += g;
      break;
    }
  }
}

void Tape::reset() {
  nodes_.clear();
  grads_.clear();
}

}  // namespace graphirl
