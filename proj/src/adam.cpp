#include "graphirl/adam.hpp"

#include <cmath>
#include <string>

#include "graphirl/errors.hpp"

namespace graphirl {

AdamState AdamState::init(const std::vector<const Matrix*>& params, double lr,
                          double weight_decay) {
  AdamState s;
  s.lr = lr;
  s.weight_decay = weight_decay;
  s.m.reserve(params.size());
  s.v.reserve(params.size());
  for (const Matrix* p : params) {
    s.m.emplace_back(p->rows, p->cols);
    s.v.emplace_back(p->rows, p->cols);
  }
  return s;
}

void adam_step(const std::vector<Matrix*>& params, const std::vector<const Matrix*>& grads,
               AdamState& state) {
  if (params.size() != grads.size() || params.size() != state.m.size()) {
    throw ShapeError("adam_step: parameter/gradient/state count mismatch");
  }
  for (size_t k = 0; k < grads.size(); ++k) {
    if (!grads[k]->same_shape(*params[k])) {
      throw ShapeError("adam_step: gradient shape mismatch at parameter " + std::to_string(k));
    }
    if (!grads[k]->all_finite()) {
      throw NumericError("adam_step: non-finite gradient at parameter " + std::to_string(k));
    }
  }

  state.step += 1;
  const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));

  for (size_t k = 0; k < params.size(); ++k) {
    Matrix& theta = *params[k];
    const Matrix& grad = *grads[k];
    Matrix& m = state.m[k];
    Matrix& v = state.v[k];
    for (size_t i = 0; i < theta.size(); ++i) {
      const double g = grad.data[i] + state.weight_decay * theta.data[i];
      m.data[i] = state.beta1 * m.data[i] + (1.0 - state.beta1) * g;
      v.data[i] = state.beta2 * v.data[i] + (1.0 - state.beta2) * g * g;
      const double m_hat = m.data[i] / bc1;
      const double v_hat = v.data[i] / bc2;
      theta.data[i] -= state.lr * m_hat / (std::sqrt(v_hat) + state.eps);
    }
  }
}

}  // namespace graphirl
