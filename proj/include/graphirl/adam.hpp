#pragma once

#include <cstdint>
#include <vector>

#include "graphirl/matrix.hpp"

namespace graphirl {

// Adam with L2 weight decay folded into the gradient (g <- g + wd * theta)
// before the moment updates. Betas and epsilon are the usual defaults.
struct AdamState {
  int64_t step = 0;
  std::vector<Matrix> m, v;
  double lr = 1e-5;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 1e-5;

  static AdamState init(const std::vector<const Matrix*>& params, double lr, double weight_decay);
};

// One in-place update. Throws NumericError on non-finite gradients.
void adam_step(const std::vector<Matrix*>& params, const std::vector<const Matrix*>& grads,
               AdamState& state);

}  // namespace graphirl
