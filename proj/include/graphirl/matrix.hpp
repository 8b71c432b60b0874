#pragma once

#include <cstddef>
#include <vector>

#include "graphirl/errors.hpp"

namespace graphirl {

// Dense row-major matrix of doubles. Column vectors are rows x 1,
// scalars 1 x 1. All summations run left to right so repeated runs
// are bitwise identical.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, 0.0) {}

  static Matrix vector(int n) { return Matrix(n, 1); }
  static Matrix scalar(double v) {
    Matrix m(1, 1);
    m.data[0] = v;
    return m;
  }

  double& at(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
  double at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }

  double& operator[](size_t i) { return data[i]; }
  double operator[](size_t i) const { return data[i]; }

  size_t size() const { return data.size(); }
  bool is_scalar() const { return rows == 1 && cols == 1; }
  bool same_shape(const Matrix& o) const { return rows == o.rows && cols == o.cols; }

  void fill(double v) { std::fill(data.begin(), data.end(), v); }
  bool all_finite() const;
};

// y = W x + b  (x, b, y column vectors)
void affine_forward(const Matrix& w, const Matrix& b, const Matrix& x, Matrix& y);

// gw += gy x^T, gb += gy, gx += W^T gy
void affine_backward(const Matrix& w, const Matrix& x, const Matrix& gy,
                     Matrix& gw, Matrix& gb, Matrix& gx);

void relu_forward(const Matrix& x, Matrix& y);

// squared Euclidean distance between two equally-shaped arrays
double squared_distance(const Matrix& a, const Matrix& b);

// softmax of logits/temperature, max-shifted for stability
void softmax_forward(const Matrix& logits, double temperature, Matrix& out);

}  // namespace graphirl
