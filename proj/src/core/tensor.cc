// core/tensor.cc

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

#include "core/tensor.h"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "util/io.h"

namespace xltts {

namespace {

thread_local bool g_grad_mode = true;

size_t NumelOf(const std::vector<int>& shape) {
  size_t n = 1;
  for (int d : shape) {
    if (d <= 0) throw std::invalid_argument("tensor dims must be positive");
    n *= static_cast<size_t>(d);
  }
  return n;
}

}  // namespace

Tensor Tensor::Zeros(std::vector<int> shape) {
  auto impl = std::make_shared<TensorImpl>();
  size_t n = NumelOf(shape);
  impl->shape = std::move(shape);
  impl->v.assign(n, 0.0);
  return Tensor(impl);
}

Tensor Tensor::Full(std::vector<int> shape, double value) {
  Tensor t = Zeros(std::move(shape));
  for (double& x : t.values()) x = value;
  return t;
}

Tensor Tensor::FromData(std::vector<int> shape, std::vector<double> data) {
  if (NumelOf(shape) != data.size())
    throw std::invalid_argument("Tensor::FromData: shape/data size mismatch");
  auto impl = std::make_shared<TensorImpl>();
  impl->shape = std::move(shape);
  impl->v = std::move(data);
  return Tensor(impl);
}

Tensor Tensor::FromMatrix(const Matrix& m) {
  return FromData({m.rows, m.cols}, m.v);
}

Tensor Tensor::Randn(std::vector<int> shape, Rng& rng, double stddev) {
  Tensor t = Zeros(std::move(shape));
  for (double& x : t.values()) x = rng.Normal() * stddev;
  return t;
}

int Tensor::rows() const {
  if (rank() != 2) throw std::invalid_argument("rows(): rank-2 tensor required");
  return impl_->shape[0];
}

int Tensor::cols() const {
  if (rank() != 2) throw std::invalid_argument("cols(): rank-2 tensor required");
  return impl_->shape[1];
}

double Tensor::item() const {
  if (numel() != 1) throw std::invalid_argument("item(): scalar required");
  return impl_->v[0];
}

double Tensor::at(int r, int c) const {
  return impl_->v[static_cast<size_t>(r) * cols() + c];
}

std::vector<double> Tensor::grad() const {
  if (impl_->g.size() == impl_->v.size()) return impl_->g;
  return std::vector<double>(impl_->v.size(), 0.0);
}

Tensor Tensor::Detach() const {
  auto impl = std::make_shared<TensorImpl>();
  impl->shape = impl_->shape;
  impl->v = impl_->v;
  return Tensor(impl);
}

Matrix Tensor::ToMatrix() const {
  Matrix m(rows(), cols());
  m.v = impl_->v;
  return m;
}

void Backward(const Tensor& loss) {
  if (!loss.defined() || loss.numel() != 1)
    throw std::invalid_argument("Backward: loss must be a defined scalar");
  if (!loss.requires_grad())
    throw std::invalid_argument(
        "Backward: loss does not depend on tracked parameters");

  // Iterative post-order DFS over parents.
  std::vector<TensorImpl*> topo;
  std::unordered_set<TensorImpl*> visited;
  struct Frame {
    TensorImpl* node;
    size_t next_parent;
  };
  std::vector<Frame> stack;
  stack.push_back({loss.raw(), 0});
  visited.insert(loss.raw());
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next_parent < f.node->parents.size()) {
      TensorImpl* p = f.node->parents[f.next_parent++].get();
      if (p->requires_grad && visited.insert(p).second)
        stack.push_back({p, 0});
    } else {
      topo.push_back(f.node);
      stack.pop_back();
    }
  }

  loss.raw()->EnsureGrad();
  loss.raw()->g[0] += 1.0;
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    TensorImpl* node = *it;
    if (node->backward_fn && node->g.size() == node->v.size())
      node->backward_fn(*node);
  }
}

NoGradGuard::NoGradGuard() : prev_(g_grad_mode) { g_grad_mode = false; }
NoGradGuard::~NoGradGuard() { g_grad_mode = prev_; }

bool GradModeEnabled() { return g_grad_mode; }

Tensor MakeOp(std::vector<int> shape, std::vector<double> values,
              std::vector<Tensor> parents,
              std::function<void(TensorImpl&)> backward_fn) {
  Tensor out = Tensor::FromData(std::move(shape), std::move(values));
  if (!g_grad_mode) return out;
  bool tracked = false;
  for (const Tensor& p : parents) {
    if (p.defined() && p.requires_grad()) {
      tracked = true;
      break;
    }
  }
  if (!tracked) return out;
  out.raw()->requires_grad = true;
  auto& pv = out.raw()->parents;
  pv.reserve(parents.size());
  for (const Tensor& p : parents) pv.push_back(p.impl());
  out.raw()->backward_fn = std::move(backward_fn);
  return out;
}

void CheckAllFinite(const Tensor& t, const std::string& what) {
  for (double x : t.values()) {
    XLTTS_CHECK(std::isfinite(x), "non-finite value in " << what);
  }
}

}  // namespace xltts
