#pragma once

#include <vector>

#include "graphirl/matrix.hpp"

namespace graphirl {

using NodeId = int;

// Reverse-mode tape. Nodes are appended in evaluation order, so the id
// sequence is already topological; backward() sweeps ids from the loss
// down to zero, visiting each reachable node exactly once. Gradients are
// accumulated only into nodes that require them, in input order, which
// keeps repeated runs bitwise identical.
class Tape {
 public:
  enum class Op {
    kLeaf,
    kAffine,      // inputs: w, b, x
    kRelu,
    kAdd,         // elementwise, two inputs
    kConcat,      // two vectors
    kSumList,     // elementwise sum of k same-shape inputs
    kMeanList,    // elementwise mean of k same-shape inputs
    kScaleConst,  // y = c * x
    kAddConst,    // y = x + c
    kStack,       // k scalars -> k-vector
    kSoftmax,     // softmax(x / c)
    kLincomb,     // inputs: weights (k-vector), x_1..x_k; y = sum w_i x_i
    kDot,         // scalar product of two vectors
    kSqDist,      // scalar = ||a - b||^2
    kSquare,      // elementwise
    kReduceSum,   // scalar = sum of entries
  };

  NodeId param(const Matrix& value);     // leaf that receives gradient
  NodeId constant(const Matrix& value);  // leaf without gradient

  NodeId affine(NodeId w, NodeId b, NodeId x);
  NodeId relu(NodeId x);
  NodeId add(NodeId a, NodeId b);
  NodeId concat(NodeId a, NodeId b);
  NodeId sum_list(const std::vector<NodeId>& xs);
  NodeId mean_list(const std::vector<NodeId>& xs);
  NodeId scale(NodeId x, double c);
  NodeId add_const(NodeId x, double c);
  NodeId stack(const std::vector<NodeId>& scalars);
  NodeId softmax(NodeId logits, double temperature);
  NodeId lincomb(NodeId weights, const std::vector<NodeId>& xs);
  NodeId dot(NodeId a, NodeId b);
  NodeId sq_dist(NodeId a, NodeId b);
  NodeId square(NodeId x);
  NodeId reduce_sum(NodeId x);

  const Matrix& value(NodeId id) const { return nodes_[id].value; }

  // Computes d(loss)/d(node) for every node contributing to the scalar
  // loss. Leaves not on any path to the loss keep a zero gradient.
  void backward(NodeId loss);

  // Valid after backward(); zeros for untouched nodes.
  const Matrix& grad(NodeId id);

  void reset();
  size_t num_nodes() const { return nodes_.size(); }

 private:
  struct Node {
    Op op;
    std::vector<NodeId> inputs;
    Matrix value;
    double c = 0.0;  // scale / added constant / softmax temperature
    bool requires_grad = false;
  };

  NodeId push(Op op, std::vector<NodeId> inputs, Matrix value, double c = 0.0);
  Matrix& grad_buf(NodeId id);
  void backward_node(NodeId id);

  std::vector<Node> nodes_;
  std::vector<Matrix> grads_;  // empty matrix = untouched (zero)
};

}  // namespace graphirl
