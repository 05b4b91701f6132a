// util/matrix.h

// Copyright 2026  xltts authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef XLTTS_UTIL_MATRIX_H_
#define XLTTS_UTIL_MATRIX_H_

#include <cmath>
#include <cstddef>
#include <vector>

namespace xltts {

// Plain row-major double matrix for data that lives outside the autodiff
// graph (corpus frames, extracted features, k-means buffers).
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> v;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), v(static_cast<size_t>(r) * c, 0.0) {}

  double& at(int r, int c) { return v[static_cast<size_t>(r) * cols + c]; }
  double at(int r, int c) const { return v[static_cast<size_t>(r) * cols + c]; }

  const double* row(int r) const { return v.data() + static_cast<size_t>(r) * cols; }
  double* row(int r) { return v.data() + static_cast<size_t>(r) * cols; }

  size_t size() const { return v.size(); }
};

// Per-column mean/variance standardization of one matrix (an utterance).
// Keeps channel identity; each column ends up zero-mean/unit-variance up to
// the epsilon guard.
inline Matrix StandardizePerChannel(const Matrix& m, double eps = 1e-8) {
  Matrix out(m.rows, m.cols);
  if (m.rows == 0) return out;
  for (int c = 0; c < m.cols; ++c) {
    double mean = 0.0;
    for (int r = 0; r < m.rows; ++r) mean += m.at(r, c);
    mean /= m.rows;
    double var = 0.0;
    for (int r = 0; r < m.rows; ++r) {
      double d = m.at(r, c) - mean;
      var += d * d;
    }
    var /= m.rows;
    double inv = 1.0 / std::sqrt(var + eps);
    for (int r = 0; r < m.rows; ++r) out.at(r, c) = (m.at(r, c) - mean) * inv;
  }
  return out;
}

}  // namespace xltts

#endif  // XLTTS_UTIL_MATRIX_H_
