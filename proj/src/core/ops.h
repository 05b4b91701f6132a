// core/ops.h

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

#ifndef XLTTS_CORE_OPS_H_
#define XLTTS_CORE_OPS_H_

#include <vector>

#include "core/tensor.h"

namespace xltts {

// Elementwise.
Tensor Add(const Tensor& a, const Tensor& b);
Tensor Sub(const Tensor& a, const Tensor& b);
Tensor Mul(const Tensor& a, const Tensor& b);
Tensor AddScalar(const Tensor& a, double c);
Tensor Scale(const Tensor& a, double c);
Tensor Neg(const Tensor& a);
Tensor Sigmoid(const Tensor& a);
Tensor Tanh(const Tensor& a);
Tensor Relu(const Tensor& a);
Tensor Exp(const Tensor& a);
Tensor Log(const Tensor& a);
Tensor Clamp(const Tensor& a, double lo, double hi);

// Broadcast of a length-D vector over the rows of a [T x D] matrix.
Tensor AddRowVector(const Tensor& x, const Tensor& v);
Tensor MulRowVector(const Tensor& x, const Tensor& v);

// Linear algebra.
Tensor MatMul(const Tensor& a, const Tensor& b);   // [M x K] * [K x N]

// Shape.
Tensor Reshape(const Tensor& a, std::vector<int> shape);
Tensor ConcatCols(const Tensor& a, const Tensor& b);
Tensor ConcatRows(const std::vector<Tensor>& parts);
Tensor ShiftRows(const Tensor& x, int offset);     // zero padded
Tensor SelectRows(const Tensor& x, const std::vector<int>& indices);
Tensor GatherRows(const Tensor& table, const std::vector<int>& ids);
// Rows at `indices` replaced by the broadcast vector `fill` (length D).
Tensor MaskRows(const Tensor& x, const std::vector<int>& indices,
                const Tensor& fill);

// Row-softmax family (last dimension).
Tensor SoftmaxRows(const Tensor& a);
Tensor LogSoftmaxRows(const Tensor& a);

// Gated linear unit over the last dimension (first half gated by sigmoid of
// the second half). Last dimension must be even.
Tensor Glu(const Tensor& a);

// Depthwise convolution of each channel with its head's kernel (already
// normalized upstream, typically by SoftmaxRows). x: [T x D], kernel: [H x K],
// D % H == 0, K odd, zero padding of (K-1)/2 on both ends.
Tensor LightweightConv(const Tensor& x, const Tensor& kernel);

// Per-position normalization over the last dimension, no affine.
Tensor NormalizeRows(const Tensor& x, double eps);

// Duration-driven resampling between phoneme and frame rates.
Tensor RepeatRows(const Tensor& x, const std::vector<int>& durations);
Tensor SegmentMean(const Tensor& x, const std::vector<int>& durations);

// Reductions.
Tensor SumAll(const Tensor& a);
Tensor MeanAll(const Tensor& a);
Tensor MeanOverRows(const Tensor& x);              // [T x D] -> [D]

// Losses (mean-reduced scalars).
Tensor L1Loss(const Tensor& a, const Tensor& b);
Tensor MseLoss(const Tensor& a, const Tensor& b);
Tensor CrossEntropyLogits(const Tensor& logits, const std::vector<int>& labels);

// Entry (i, j) is the log-density of sample row j under the diagonal
// Gaussian whose mean/log-variance are row i.
Tensor GaussianLogProbMatrix(const Tensor& mean, const Tensor& logvar,
                             const Tensor& x);
Tensor DiagMean(const Tensor& square);             // scalar mean of diagonal

}  // namespace xltts

#endif  // XLTTS_CORE_OPS_H_
