// core/nn.h

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

#ifndef XLTTS_CORE_NN_H_
#define XLTTS_CORE_NN_H_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "core/ops.h"
#include "core/tensor.h"

namespace xltts {

constexpr double kLayerNormEps = 1e-5;

// Owns every trainable tensor of one model under a unique dotted name.
// Creation order is the checkpoint/optimizer order, so runs are reproducible.
class ParameterStore {
 public:
  Tensor Create(const std::string& name, std::vector<int> shape,
                Rng& rng, double stddev);
  Tensor CreateConstant(const std::string& name, std::vector<int> shape,
                        double value);

  Tensor Get(const std::string& name) const;
  bool Has(const std::string& name) const;
  void ZeroGrad();

  const std::vector<std::pair<std::string, Tensor>>& items() const {
    return items_;
  }
  size_t size() const { return items_.size(); }

 private:
  std::vector<std::pair<std::string, Tensor>> items_;
  std::map<std::string, size_t> index_;
};

struct Linear {
  Tensor w;  // [in x out]
  Tensor b;  // [out]

  Linear() = default;
  Linear(ParameterStore& params, const std::string& name, int in, int out,
         Rng& rng);
  Tensor Forward(const Tensor& x) const {
    return AddRowVector(MatMul(x, w), b);
  }
};

// Sequence convolution as a sum of shifted linear maps (odd kernel, zero
// padding, full channel mixing).
struct Conv1d {
  std::vector<Linear> taps;
  int kernel_size = 0;

  Conv1d() = default;
  Conv1d(ParameterStore& params, const std::string& name, int in, int out,
         int kernel, Rng& rng);
  Tensor Forward(const Tensor& x) const;
};

struct EmbeddingTable {
  Tensor table;  // [vocab x dim]

  EmbeddingTable() = default;
  EmbeddingTable(ParameterStore& params, const std::string& name, int vocab,
                 int dim, Rng& rng);
  Tensor Forward(const std::vector<int>& ids) const;
  Tensor ForwardOne(int id) const;
  int vocab() const { return table.rows(); }
};

// Standard layer normalization: normalize + learned affine.
Tensor LayerNormAffine(const Tensor& x, const Tensor& scale,
                       const Tensor& bias, double eps = kLayerNormEps);

struct LayerNorm {
  Tensor scale;  // init 1
  Tensor bias;   // init 0

  LayerNorm() = default;
  LayerNorm(ParameterStore& params, const std::string& name, int dim);
  Tensor Forward(const Tensor& x) const {
    return LayerNormAffine(x, scale, bias);
  }
};

// Layer normalization whose affine is predicted from a conditioning vector:
// scale = 1 + Ws*cond + bs, bias = Wb*cond + bb. Zero init reduces it to a
// plain unit-scale/zero-bias layer norm.
struct ConditionalLayerNorm {
  Tensor w_scale, b_scale;  // [cond x dim], [dim]
  Tensor w_bias, b_bias;

  ConditionalLayerNorm() = default;
  ConditionalLayerNorm(ParameterStore& params, const std::string& name,
                       int cond_dim, int dim);
  Tensor Forward(const Tensor& x, const Tensor& condition) const;
};

struct LConvBlockConfig {
  int model_dim = 0;
  int kernel_size = 3;
  int num_heads = 4;
  int ff_dim = 0;
  bool conditional = false;
  int condition_dim = 0;

  void Validate() const;
};

// Two-sublayer sequence block: GLU-gated input projection into a
// softmax-normalized depthwise convolution, then a feedforward, each wrapped
// in a residual + (conditional) layer norm.
struct LConvBlock {
  LConvBlockConfig cfg;
  Linear in_proj;          // dim -> 2*dim
  Tensor kernel_logits;    // [heads x kernel]
  Linear ff1, ff2;
  LayerNorm norm1, norm2;
  ConditionalLayerNorm cnorm1, cnorm2;

  LConvBlock() = default;
  LConvBlock(ParameterStore& params, const std::string& name,
             const LConvBlockConfig& cfg, Rng& rng);
  Tensor Forward(const Tensor& x, const Tensor& condition = Tensor()) const;
};

}  // namespace xltts

#endif  // XLTTS_CORE_NN_H_
