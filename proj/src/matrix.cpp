#include "graphirl/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace graphirl {

bool Matrix::all_finite() const {
  for (double v : data) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void affine_forward(const Matrix& w, const Matrix& b, const Matrix& x, Matrix& y) {
  if (w.cols != x.rows || x.cols != 1 || b.rows != w.rows || b.cols != 1) {
    throw ShapeError("affine: W is " + std::to_string(w.rows) + "x" + std::to_string(w.cols) +
                     ", x is " + std::to_string(x.rows) + "x" + std::to_string(x.cols) +
                     ", b is " + std::to_string(b.rows) + "x" + std::to_string(b.cols));
  }
  y = Matrix::vector(w.rows);
  for (int r = 0; r < w.rows; ++r) {
    double acc = b.data[r];
    const double* wr = &w.data[static_cast<size_t>(r) * w.cols];
    for (int c = 0; c < w.cols; ++c) acc += wr[c] * x.data[c];
    y.data[r] = acc;
  }
}

void affine_backward(const Matrix& w, const Matrix& x, const Matrix& gy,
                     Matrix& gw, Matrix& gb, Matrix& gx) {
  for (int r = 0; r < w.rows; ++r) {
    const double g = gy.data[r];
    double* gwr = &gw.data[static_cast<size_t>(r) * w.cols];
    for (int c = 0; c < w.cols; ++c) gwr[c] += g * x.data[c];
    gb.data[r] += g;
  }
  for (int c = 0; c < w.cols; ++c) {
    double acc = 0.0;
    for (int r = 0; r < w.rows; ++r) acc += w.data[static_cast<size_t>(r) * w.cols + c] * gy.data[r];
    gx.data[c] += acc;
  }
}

void relu_forward(const Matrix& x, Matrix& y) {
  y = x;
  for (double& v : y.data) v = v > 0.0 ? v : 0.0;
}

double squared_distance(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) throw ShapeError("squared_distance: shape mismatch");
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a.data[i] - b.data[i];
    acc += d * d;
  }
  return acc;
}

void softmax_forward(const Matrix& logits, double temperature, Matrix& out) {
  if (temperature <= 0.0) throw ContractError("softmax: temperature must be > 0");
  out = logits;
  double mx = out.data[0] / temperature;
  for (size_t i = 0; i < out.size(); ++i) {
    out.data[i] /= temperature;
    mx = std::max(mx, out.data[i]);
  }
  double z = 0.0;
  for (size_t i = 0; i < out.size(); ++i) {
    out.data[i] = std::exp(out.data[i] - mx);
    z += out.data[i];
  }
  for (size_t i = 0; i < out.size(); ++i) out.data[i] /= z;
}

}  // namespace graphirl
