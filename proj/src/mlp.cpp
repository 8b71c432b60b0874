#include "graphirl/mlp.hpp"

#include <cmath>

namespace graphirl {

static Matrix uniform_fan_in(int rows, int cols, Rng& rng) {
  Matrix m(rows, cols);
  const double bound = std::sqrt(6.0 / static_cast<double>(cols));
  for (double& v : m.data) v = rng.uniform(-bound, bound);
  return m;
}

MlpParams MlpParams::init(int in_dim, int hidden_dim, int out_dim, Rng& rng) {
  MlpParams p;
  p.w1 = uniform_fan_in(hidden_dim, in_dim, rng);
  p.b1 = Matrix::vector(hidden_dim);
  p.w2 = uniform_fan_in(out_dim, hidden_dim, rng);
  p.b2 = Matrix::vector(out_dim);
  return p;
}

Matrix mlp_forward(const MlpParams& p, const Matrix& x) {
  Matrix h, y;
  affine_forward(p.w1, p.b1, x, h);
  relu_forward(h, h);
  affine_forward(p.w2, p.b2, h, y);
  return y;
}

MlpNodes bind_mlp(Tape& tape, const MlpParams& p) {
  return MlpNodes{tape.param(p.w1), tape.param(p.b1), tape.param(p.w2), tape.param(p.b2)};
}

NodeId mlp_forward(Tape& tape, const MlpNodes& p, NodeId x) {
  return tape.affine(p.w2, p.b2, tape.relu(tape.affine(p.w1, p.b1, x)));
}

}  // namespace graphirl
