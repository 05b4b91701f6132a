// core/tensor.h

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

#ifndef XLTTS_CORE_TENSOR_H_
#define XLTTS_CORE_TENSOR_H_

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "util/matrix.h"
#include "util/rng.h"

namespace xltts {

// Dense double tensor node in a dynamically built reverse-mode graph.
// Rank 1 ({n}) and rank 2 ({rows, cols}) cover everything in this codebase;
// a scalar is {1}. Gradients are allocated lazily on first accumulation.
struct TensorImpl {
  std::vector<int> shape;
  std::vector<double> v;
  std::vector<double> g;
  bool requires_grad = false;

  std::vector<std::shared_ptr<TensorImpl>> parents;
  std::function<void(TensorImpl&)> backward_fn;

  size_t numel() const { return v.size(); }
  void EnsureGrad() {
    if (g.size() != v.size()) g.assign(v.size(), 0.0);
  }
};

class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::shared_ptr<TensorImpl> impl) : impl_(std::move(impl)) {}

  static Tensor Zeros(std::vector<int> shape);
  static Tensor Full(std::vector<int> shape, double value);
  static Tensor Scalar(double value) { return Full({1}, value); }
  static Tensor FromData(std::vector<int> shape, std::vector<double> data);
  static Tensor FromMatrix(const Matrix& m);
  static Tensor Randn(std::vector<int> shape, Rng& rng, double stddev);

  bool defined() const { return impl_ != nullptr; }
  const std::vector<int>& shape() const { return impl_->shape; }
  int dim(int i) const { return impl_->shape[i]; }
  int rank() const { return static_cast<int>(impl_->shape.size()); }
  size_t numel() const { return impl_->numel(); }
  int rows() const;
  int cols() const;

  std::vector<double>& values() { return impl_->v; }
  const std::vector<double>& values() const { return impl_->v; }
  double item() const;
  double at(int r, int c) const;

  // Gradient view; zeros if backward never reached this node.
  std::vector<double> grad() const;
  bool requires_grad() const { return impl_->requires_grad; }
  void set_requires_grad(bool b) { impl_->requires_grad = b; }

  // Same values, severed from the graph.
  Tensor Detach() const;

  Matrix ToMatrix() const;

  std::shared_ptr<TensorImpl> impl() const { return impl_; }
  TensorImpl* raw() const { return impl_.get(); }

 private:
  std::shared_ptr<TensorImpl> impl_;
};

// Accumulates d(loss)/d(node) into every reachable node's grad buffer.
// loss must be a scalar that depends on at least one tracked tensor.
void Backward(const Tensor& loss);

// While alive, newly created ops do not record the graph (inference mode).
class NoGradGuard {
 public:
  NoGradGuard();
  ~NoGradGuard();
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;

 private:
  bool prev_;
};

bool GradModeEnabled();

// Op constructor used by ops.cc: wires parents/backward only when grad mode
// is on and some parent is tracked.
Tensor MakeOp(std::vector<int> shape, std::vector<double> values,
              std::vector<Tensor> parents,
              std::function<void(TensorImpl&)> backward_fn);

void CheckAllFinite(const Tensor& t, const std::string& what);

}  // namespace xltts

#endif  // XLTTS_CORE_TENSOR_H_
