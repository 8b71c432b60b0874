#pragma once

#include "graphirl/matrix.hpp"
#include "graphirl/rng.hpp"
#include "graphirl/tape.hpp"

namespace graphirl {

// Two affine layers with a ReLU between them: y = w2 relu(w1 x + b1) + b2.
struct MlpParams {
  Matrix w1, b1, w2, b2;

  int in_dim() const { return w1.cols; }
  int hidden_dim() const { return w1.rows; }
  int out_dim() const { return w2.rows; }

  // Weights uniform in [-sqrt(6/fan_in), +sqrt(6/fan_in)], biases zero.
  static MlpParams init(int in_dim, int hidden_dim, int out_dim, Rng& rng);
};

Matrix mlp_forward(const MlpParams& p, const Matrix& x);

// Tape bindings so the same parameters can be differentiated through.
struct MlpNodes {
  NodeId w1, b1, w2, b2;
};

MlpNodes bind_mlp(Tape& tape, const MlpParams& p);
NodeId mlp_forward(Tape& tape, const MlpNodes& p, NodeId x);

}  // namespace graphirl
