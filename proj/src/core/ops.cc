// core/ops.cc

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

#include "core/ops.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace xltts {

namespace {

constexpr double kLog2Pi = 1.8378770664093453;

double* GradOf(const std::shared_ptr<TensorImpl>& p) {
  if (!p->requires_grad) return nullptr;
  p->EnsureGrad();
  return p->g.data();
}

void RequireSameShape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.shape() != b.shape())
    throw std::invalid_argument(std::string(op) + ": shape mismatch");
}

// Rows/cols view treating rank-1 tensors as a single row.
void RowView(const Tensor& t, int* rows, int* cols) {
  if (t.rank() == 1) {
    *rows = 1;
    *cols = t.dim(0);
  } else if (t.rank() == 2) {
    *rows = t.dim(0);
    *cols = t.dim(1);
  } else {
    throw std::invalid_argument("rank-1 or rank-2 tensor required");
  }
}

Tensor Elementwise(const Tensor& a, double (*f)(double),
                   double (*df)(double, double)) {
  std::vector<double> out(a.numel());
  for (size_t i = 0; i < out.size(); ++i) out[i] = f(a.values()[i]);
  auto pa = a.impl();
  return MakeOp(a.shape(), std::move(out), {a},
                [pa, df](TensorImpl& self) {
                  double* ga = GradOf(pa);
                  if (!ga) return;
                  for (size_t i = 0; i < self.v.size(); ++i)
                    ga[i] += self.g[i] * df(pa->v[i], self.v[i]);
                });
}

}  // namespace

Tensor Add(const Tensor& a, const Tensor& b) {
  RequireSameShape(a, b, "Add");
  std::vector<double> out(a.numel());
  for (size_t i = 0; i < out.size(); ++i) out[i] = a.values()[i] + b.values()[i];
  auto pa = a.impl(), pb = b.impl();
  return MakeOp(a.shape(), std::move(out), {a, b}, [pa, pb](TensorImpl& self) {
    if (double* ga = GradOf(pa))
      for (size_t i = 0; i < self.g.size(); ++i) ga[i] += self.g[i];
    if (double* gb = GradOf(pb))
      for (size_t i = 0; i < self.g.size(); ++i) gb[i] += self.g[i];
  });
}

Tensor Sub(const Tensor& a, const Tensor& b) {
  RequireSameShape(a, b, "Sub");
  std::vector<double> out(a.numel());
  for (size_t i = 0; i < out.size(); ++i) out[i] = a.values()[i] - b.values()[i];
  auto pa = a.impl(), pb = b.impl();
  return MakeOp(a.shape(), std::move(out), {a, b}, [pa, pb](TensorImpl& self) {
    if (double* ga = GradOf(pa))
      for (size_t i = 0; i < self.g.size(); ++i) ga[i] += self.g[i];
    if (double* gb = GradOf(pb))
      for (size_t i = 0; i < self.g.size(); ++i) gb[i] -= self.g[i];
  });
}

Tensor Mul(const Tensor& a, const Tensor& b) {
  RequireSameShape(a, b, "Mul");
  std::vector<double> out(a.numel());
  for (size_t i = 0; i < out.size(); ++i) out[i] = a.values()[i] * b.values()[i];
  auto pa = a.impl(), pb = b.impl();
  return MakeOp(a.shape(), std::move(out), {a, b}, [pa, pb](TensorImpl& self) {
    if (double* ga = GradOf(pa))
      for (size_t i = 0; i < self.g.size(); ++i) ga[i] += self.g[i] * pb->v[i];
    if (double* gb = GradOf(pb))
      for (size_t i = 0; i < self.g.size(); ++i) gb[i] += self.g[i] * pa->v[i];
  });
}

Tensor AddScalar(const Tensor& a, double c) {
  std::vector<double> out(a.numel());
  for (size_t i = 0; i < out.size(); ++i) out[i] = a.values()[i] + c;
  auto pa = a.impl();
  return MakeOp(a.shape(), std::move(out), {a}, [pa](TensorImpl& self) {
    if (double* ga = GradOf(pa))
      for (size_t i = 0; i < self.g.size(); ++i) ga[i] += self.g[i];
  });
}

Tensor Scale(const Tensor& a, double c) {
  std::vector<double> out(a.numel());
  for (size_t i = 0; i < out.size(); ++i) out[i] = a.values()[i] * c;
  auto pa = a.impl();
  return MakeOp(a.shape(), std::move(out), {a}, [pa, c](TensorImpl& self) {
    if (double* ga = GradOf(pa))
      for (size_t i = 0; i < self.g.size(); ++i) ga[i] += self.g[i] * c;
  });
}

Tensor Neg(const Tensor& a) { return Scale(a, -1.0); }

Tensor Sigmoid(const Tensor& a) {
  return Elementwise(
      a, [](double x) { return 1.0 / (1.0 + std::exp(-x)); },
      [](double, double y) { return y * (1.0 - y); });
}

Tensor Tanh(const Tensor& a) {
  return Elementwise(a, [](double x) { return std::tanh(x); },
                     [](double, double y) { return 1.0 - y * y; });
}

Tensor Relu(const Tensor& a) {
  return Elementwise(a, [](double x) { return x > 0.0 ? x : 0.0; },
                     [](double x, double) { return x > 0.0 ? 1.0 : 0.0; });
}

Tensor Exp(const Tensor& a) {
  return Elementwise(a, [](double x) { return std::exp(x); },
                     [](double, double y) { return y; });
}

Tensor Log(const Tensor& a) {
  return Elementwise(a, [](double x) { return std::log(x); },
                     [](double x, double) { return 1.0 / x; });
}

Tensor Clamp(const Tensor& a, double lo, double hi) {
  std::vector<double> out(a.numel());
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = std::min(std::max(a.values()[i], lo), hi);
  auto pa = a.impl();
  return MakeOp(a.shape(), std::move(out), {a}, [pa, lo, hi](TensorImpl& self) {
    double* ga = GradOf(pa);
    if (!ga) return;
    for (size_t i = 0; i < self.g.size(); ++i)
      if (pa->v[i] >= lo && pa->v[i] <= hi) ga[i] += self.g[i];
  });
}

Tensor AddRowVector(const Tensor& x, const Tensor& v) {
  int t, d;
  RowView(x, &t, &d);
  if (static_cast<int>(v.numel()) != d)
    throw std::invalid_argument("AddRowVector: vector length mismatch");
  std::vector<double> out(x.numel());
  for (int r = 0; r < t; ++r)
    for (int c = 0; c < d; ++c)
      out[static_cast<size_t>(r) * d + c] =
          x.values()[static_cast<size_t>(r) * d + c] + v.values()[c];
  auto px = x.impl(), pv = v.impl();
  return MakeOp(x.shape(), std::move(out), {x, v},
                [px, pv, t, d](TensorImpl& self) {
                  if (double* gx = GradOf(px))
                    for (size_t i = 0; i < self.g.size(); ++i)
                      gx[i] += self.g[i];
                  if (double* gv = GradOf(pv))
                    for (int r = 0; r < t; ++r)
                      for (int c = 0; c < d; ++c)
                        gv[c] += self.g[static_cast<size_t>(r) * d + c];
                });
}

Tensor MulRowVector(const Tensor& x, const Tensor& v) {
  int t, d;
  RowView(x, &t, &d);
  if (static_cast<int>(v.numel()) != d)
    throw std::invalid_argument("MulRowVector: vector length mismatch");
  std::vector<double> out(x.numel());
  for (int r = 0; r < t; ++r)
    for (int c = 0; c < d; ++c)
      out[static_cast<size_t>(r) * d + c] =
          x.values()[static_cast<size_t>(r) * d + c] * v.values()[c];
  auto px = x.impl(), pv = v.impl();
  return MakeOp(x.shape(), std::move(out), {x, v},
                [px, pv, t, d](TensorImpl& self) {
                  double* gx = GradOf(px);
                  double* gv = GradOf(pv);
                  for (int r = 0; r < t; ++r)
                    for (int c = 0; c < d; ++c) {
                      size_t i = static_cast<size_t>(r) * d + c;
                      if (gx) gx[i] += self.g[i] * pv->v[c];
                      if (gv) gv[c] += self.g[i] * px->v[i];
                    }
                });
}

Tensor MatMul(const Tensor& a, const Tensor& b) {
  if (a.rank() != 2 || b.rank() != 2 || a.cols() != b.rows())
    throw std::invalid_argument("MatMul: incompatible shapes");
  int m = a.rows(), k = a.cols(), n = b.cols();
  std::vector<double> out(static_cast<size_t>(m) * n, 0.0);
  const double* av = a.values().data();
  const double* bv = b.values().data();
  for (int i = 0; i < m; ++i) {
    double* orow = out.data() + static_cast<size_t>(i) * n;
    for (int p = 0; p < k; ++p) {
      double aip = av[static_cast<size_t>(i) * k + p];
      if (aip == 0.0) continue;
      const double* brow = bv + static_cast<size_t>(p) * n;
      for (int j = 0; j < n; ++j) orow[j] += aip * brow[j];
    }
  }
  auto pa = a.impl(), pb = b.impl();
  return MakeOp({m, n}, std::move(out), {a, b},
                [pa, pb, m, k, n](TensorImpl& self) {
                  const double* g = self.g.data();
                  if (double* ga = GradOf(pa)) {
                    // dA = G * B^T
                    const double* bv = pb->v.data();
                    for (int i = 0; i < m; ++i)
                      for (int p = 0; p < k; ++p) {
                        double acc = 0.0;
                        const double* grow = g + static_cast<size_t>(i) * n;
                        const double* brow = bv + static_cast<size_t>(p) * n;
                        for (int j = 0; j < n; ++j) acc += grow[j] * brow[j];
                        ga[static_cast<size_t>(i) * k + p] += acc;
                      }
                  }
                  if (double* gb = GradOf(pb)) {
                    // dB = A^T * G
                    const double* av = pa->v.data();
                    for (int p = 0; p < k; ++p) {
                      double* gbrow = gb + static_cast<size_t>(p) * n;
                      for (int i = 0; i < m; ++i) {
                        double aip = av[static_cast<size_t>(i) * k + p];
                        if (aip == 0.0) continue;
                        const double* grow = g + static_cast<size_t>(i) * n;
                        for (int j = 0; j < n; ++j) gbrow[j] += aip * grow[j];
                      }
                    }
                  }
                });
}

Tensor Reshape(const Tensor& a, std::vector<int> shape) {
  size_t n = 1;
  for (int d : shape) n *= static_cast<size_t>(d);
  if (n != a.numel())
    throw std::invalid_argument("Reshape: element count mismatch");
  auto pa = a.impl();
  return MakeOp(std::move(shape), a.values(), {a}, [pa](TensorImpl& self) {
    if (double* ga = GradOf(pa))
      for (size_t i = 0; i < self.g.size(); ++i) ga[i] += self.g[i];
  });
}

Tensor ConcatCols(const Tensor& a, const Tensor& b) {
  if (a.rank() != 2 || b.rank() != 2 || a.rows() != b.rows())
    throw std::invalid_argument("ConcatCols: row mismatch");
  int t = a.rows(), da = a.cols(), db = b.cols();
  std::vector<double> out(static_cast<size_t>(t) * (da + db));
  for (int r = 0; r < t; ++r) {
    std::copy_n(a.values().data() + static_cast<size_t>(r) * da, da,
                out.data() + static_cast<size_t>(r) * (da + db));
    std::copy_n(b.values().data() + static_cast<size_t>(r) * db, db,
                out.data() + static_cast<size_t>(r) * (da + db) + da);
  }
  auto pa = a.impl(), pb = b.impl();
  return MakeOp({t, da + db}, std::move(out), {a, b},
                [pa, pb, t, da, db](TensorImpl& self) {
                  double* ga = GradOf(pa);
                  double* gb = GradOf(pb);
                  for (int r = 0; r < t; ++r) {
                    const double* grow =
                        self.g.data() + static_cast<size_t>(r) * (da + db);
                    if (ga)
                      for (int c = 0; c < da; ++c)
                        ga[static_cast<size_t>(r) * da + c] += grow[c];
                    if (gb)
                      for (int c = 0; c < db; ++c)
                        gb[static_cast<size_t>(r) * db + c] += grow[da + c];
                  }
                });
}

Tensor ConcatRows(const std::vector<Tensor>& parts) {
  if (parts.empty()) throw std::invalid_argument("ConcatRows: empty input");
  int d = parts[0].cols();
  int total = 0;
  for (const Tensor& p : parts) {
    if (p.rank() != 2 || p.cols() != d)
      throw std::invalid_argument("ConcatRows: column mismatch");
    total += p.rows();
  }
  std::vector<double> out;
  out.reserve(static_cast<size_t>(total) * d);
  for (const Tensor& p : parts)
    out.insert(out.end(), p.values().begin(), p.values().end());
  std::vector<std::shared_ptr<TensorImpl>> impls;
  for (const Tensor& p : parts) impls.push_back(p.impl());
  return MakeOp({total, d}, std::move(out), parts, [impls](TensorImpl& self) {
    size_t offset = 0;
    for (const auto& p : impls) {
      if (double* gp = GradOf(p))
        for (size_t i = 0; i < p->v.size(); ++i) gp[i] += self.g[offset + i];
      offset += p->v.size();
    }
  });
}

Tensor ShiftRows(const Tensor& x, int offset) {
  int t = x.rows(), d = x.cols();
  std::vector<double> out(x.numel(), 0.0);
  for (int r = 0; r < t; ++r) {
    int src = r - offset;
    if (src < 0 || src >= t) continue;
    std::copy_n(x.values().data() + static_cast<size_t>(src) * d, d,
                out.data() + static_cast<size_t>(r) * d);
  }
  auto px = x.impl();
  return MakeOp(x.shape(), std::move(out), {x},
                [px, t, d, offset](TensorImpl& self) {
                  double* gx = GradOf(px);
                  if (!gx) return;
                  for (int r = 0; r < t; ++r) {
                    int src = r - offset;
                    if (src < 0 || src >= t) continue;
                    for (int c = 0; c < d; ++c)
                      gx[static_cast<size_t>(src) * d + c] +=
                          self.g[static_cast<size_t>(r) * d + c];
                  }
                });
}

Tensor SelectRows(const Tensor& x, const std::vector<int>& indices) {
  int t = x.rows(), d = x.cols();
  std::vector<double> out(indices.size() * static_cast<size_t>(d));
  for (size_t i = 0; i < indices.size(); ++i) {
    int r = indices[i];
    if (r < 0 || r >= t) throw std::invalid_argument("SelectRows: bad index");
    std::copy_n(x.values().data() + static_cast<size_t>(r) * d, d,
                out.data() + i * d);
  }
  auto px = x.impl();
  auto idx = indices;
  return MakeOp({static_cast<int>(indices.size()), d}, std::move(out), {x},
                [px, d, idx](TensorImpl& self) {
                  double* gx = GradOf(px);
                  if (!gx) return;
                  for (size_t i = 0; i < idx.size(); ++i)
                    for (int c = 0; c < d; ++c)
                      gx[static_cast<size_t>(idx[i]) * d + c] +=
                          self.g[i * d + c];
                });
}

Tensor GatherRows(const Tensor& table, const std::vector<int>& ids) {
  return SelectRows(table, ids);
}

Tensor MaskRows(const Tensor& x, const std::vector<int>& indices,
                const Tensor& fill) {
  int t = x.rows(), d = x.cols();
  if (static_cast<int>(fill.numel()) != d)
    throw std::invalid_argument("MaskRows: fill length mismatch");
  std::vector<double> out = x.values();
  std::vector<char> masked(t, 0);
  for (int r : indices) {
    if (r < 0 || r >= t) throw std::invalid_argument("MaskRows: bad index");
    masked[r] = 1;
    std::copy_n(fill.values().data(), d, out.data() + static_cast<size_t>(r) * d);
  }
  auto px = x.impl(), pf = fill.impl();
  return MakeOp(x.shape(), std::move(out), {x, fill},
                [px, pf, t, d, masked](TensorImpl& self) {
                  double* gx = GradOf(px);
                  double* gf = GradOf(pf);
                  for (int r = 0; r < t; ++r) {
                    const double* grow =
                        self.g.data() + static_cast<size_t>(r) * d;
                    if (masked[r]) {
                      if (gf)
                        for (int c = 0; c < d; ++c) gf[c] += grow[c];
                    } else if (gx) {
                      for (int c = 0; c < d; ++c)
                        gx[static_cast<size_t>(r) * d + c] += grow[c];
                    }
                  }
                });
}

Tensor SoftmaxRows(const Tensor& a) {
  int t, d;
  RowView(a, &t, &d);
  std::vector<double> out(a.numel());
  for (int r = 0; r < t; ++r) {
    const double* in = a.values().data() + static_cast<size_t>(r) * d;
    double* o = out.data() + static_cast<size_t>(r) * d;
    double mx = in[0];
    for (int c = 1; c < d; ++c) mx = std::max(mx, in[c]);
    double sum = 0.0;
    for (int c = 0; c < d; ++c) {
      o[c] = std::exp(in[c] - mx);
      sum += o[c];
    }
    for (int c = 0; c < d; ++c) o[c] /= sum;
  }
  auto pa = a.impl();
  return MakeOp(a.shape(), std::move(out), {a}, [pa, t, d](TensorImpl& self) {
    double* ga = GradOf(pa);
    if (!ga) return;
    for (int r = 0; r < t; ++r) {
      const double* y = self.v.data() + static_cast<size_t>(r) * d;
      const double* g = self.g.data() + static_cast<size_t>(r) * d;
      double dot = 0.0;
      for (int c = 0; c < d; ++c) dot += y[c] * g[c];
      for (int c = 0; c < d; ++c)
        ga[static_cast<size_t>(r) * d + c] += y[c] * (g[c] - dot);
    }
  });
}

Tensor LogSoftmaxRows(const Tensor& a) {
  int t, d;
  RowView(a, &t, &d);
  std::vector<double> out(a.numel());
  for (int r = 0; r < t; ++r) {
    const double* in = a.values().data() + static_cast<size_t>(r) * d;
    double* o = out.data() + static_cast<size_t>(r) * d;
    double mx = in[0];
    for (int c = 1; c < d; ++c) mx = std::max(mx, in[c]);
    double sum = 0.0;
    for (int c = 0; c < d; ++c) sum += std::exp(in[c] - mx);
    double lse = mx + std::log(sum);
    for (int c = 0; c < d; ++c) o[c] = in[c] - lse;
  }
  auto pa = a.impl();
  return MakeOp(a.shape(), std::move(out), {a}, [pa, t, d](TensorImpl& self) {
    double* ga = GradOf(pa);
    if (!ga) return;
    for (int r = 0; r < t; ++r) {
      const double* y = self.v.data() + static_cast<size_t>(r) * d;
      const double* g = self.g.data() + static_cast<size_t>(r) * d;
      double gsum = 0.0;
      for (int c = 0; c < d; ++c) gsum += g[c];
      for (int c = 0; c < d; ++c)
        ga[static_cast<size_t>(r) * d + c] += g[c] - std::exp(y[c]) * gsum;
    }
  });
}

Tensor Glu(const Tensor& a) {
  int t, d2;
  RowView(a, &t, &d2);
  if (d2 % 2 != 0)
    throw std::invalid_argument("Glu: last dimension must be even");
  int d = d2 / 2;
  std::vector<double> out(static_cast<size_t>(t) * d);
  std::vector<double> sig(static_cast<size_t>(t) * d);
  for (int r = 0; r < t; ++r) {
    const double* in = a.values().data() + static_cast<size_t>(r) * d2;
    for (int c = 0; c < d; ++c) {
      double s = 1.0 / (1.0 + std::exp(-in[d + c]));
      sig[static_cast<size_t>(r) * d + c] = s;
      out[static_cast<size_t>(r) * d + c] = in[c] * s;
    }
  }
  std::vector<int> oshape = a.shape();
  oshape.back() = d;
  auto pa = a.impl();
  return MakeOp(std::move(oshape), std::move(out), {a},
                [pa, t, d, d2, sig](TensorImpl& self) {
                  double* ga = GradOf(pa);
                  if (!ga) return;
                  for (int r = 0; r < t; ++r) {
                    const double* in =
                        pa->v.data() + static_cast<size_t>(r) * d2;
                    const double* g =
                        self.g.data() + static_cast<size_t>(r) * d;
                    for (int c = 0; c < d; ++c) {
                      double s = sig[static_cast<size_t>(r) * d + c];
                      ga[static_cast<size_t>(r) * d2 + c] += g[c] * s;
                      ga[static_cast<size_t>(r) * d2 + d + c] +=
                          g[c] * in[c] * s * (1.0 - s);
                    }
                  }
                });
}

Tensor LightweightConv(const Tensor& x, const Tensor& kernel) {
  if (x.rank() != 2 || kernel.rank() != 2)
    throw std::invalid_argument("LightweightConv: rank-2 tensors required");
  int t = x.rows(), d = x.cols(), h = kernel.rows(), k = kernel.cols();
  if (d % h != 0)
    throw std::invalid_argument(
        "LightweightConv: channels not divisible by heads");
  if (k % 2 == 0)
    throw std::invalid_argument("LightweightConv: kernel size must be odd");
  int pad = (k - 1) / 2;
  int per_head = d / h;
  std::vector<double> out(x.numel(), 0.0);
  const double* xv = x.values().data();
  const double* kv = kernel.values().data();
  for (int r = 0; r < t; ++r)
    for (int c = 0; c < d; ++c) {
      int head = c / per_head;
      double acc = 0.0;
      for (int j = 0; j < k; ++j) {
        int src = r + j - pad;
        if (src < 0 || src >= t) continue;
        acc += kv[static_cast<size_t>(head) * k + j] *
               xv[static_cast<size_t>(src) * d + c];
      }
      out[static_cast<size_t>(r) * d + c] = acc;
    }
  auto px = x.impl(), pk = kernel.impl();
  return MakeOp(x.shape(), std::move(out), {x, kernel},
                [px, pk, t, d, h, k, pad, per_head](TensorImpl& self) {
                  double* gx = GradOf(px);
                  double* gk = GradOf(pk);
                  const double* g = self.g.data();
                  const double* xv = px->v.data();
                  const double* kv = pk->v.data();
                  for (int r = 0; r < t; ++r)
                    for (int c = 0; c < d; ++c) {
                      int head = c / per_head;
                      double go = g[static_cast<size_t>(r) * d + c];
                      if (go == 0.0) continue;
                      for (int j = 0; j < k; ++j) {
                        int src = r + j - pad;
                        if (src < 0 || src >= t) continue;
                        if (gx)
                          gx[static_cast<size_t>(src) * d + c] +=
                              go * kv[static_cast<size_t>(head) * k + j];
                        if (gk)
                          gk[static_cast<size_t>(head) * k + j] +=
                              go * xv[static_cast<size_t>(src) * d + c];
                      }
                    }
                });
}

Tensor NormalizeRows(const Tensor& x, double eps) {
  int t, d;
  RowView(x, &t, &d);
  if (d < 1) throw std::invalid_argument("NormalizeRows: empty rows");
  std::vector<double> out(x.numel());
  std::vector<double> invstd(t);
  for (int r = 0; r < t; ++r) {
    const double* in = x.values().data() + static_cast<size_t>(r) * d;
    double mean = 0.0;
    for (int c = 0; c < d; ++c) mean += in[c];
    mean /= d;
    double var = 0.0;
    for (int c = 0; c < d; ++c) {
      double dd = in[c] - mean;
      var += dd * dd;
    }
    var /= d;
    double inv = 1.0 / std::sqrt(var + eps);
    invstd[r] = inv;
    for (int c = 0; c < d; ++c)
      out[static_cast<size_t>(r) * d + c] = (in[c] - mean) * inv;
  }
  auto px = x.impl();
  return MakeOp(x.shape(), std::move(out), {x},
                [px, t, d, invstd](TensorImpl& self) {
                  double* gx = GradOf(px);
                  if (!gx) return;
                  for (int r = 0; r < t; ++r) {
                    const double* xhat =
                        self.v.data() + static_cast<size_t>(r) * d;
                    const double* g =
                        self.g.data() + static_cast<size_t>(r) * d;
                    double gmean = 0.0, gdot = 0.0;
                    for (int c = 0; c < d; ++c) {
                      gmean += g[c];
                      gdot += g[c] * xhat[c];
                    }
                    gmean /= d;
                    gdot /= d;
                    for (int c = 0; c < d; ++c)
                      gx[static_cast<size_t>(r) * d + c] +=
                          invstd[r] * (g[c] - gmean - xhat[c] * gdot);
                  }
                });
}

Tensor RepeatRows(const Tensor& x, const std::vector<int>& durations) {
  int p = x.rows(), d = x.cols();
  if (static_cast<int>(durations.size()) != p)
    throw std::invalid_argument("RepeatRows: durations length mismatch");
  int total = 0;
  for (int dur : durations) {
    if (dur <= 0)
      throw std::invalid_argument("RepeatRows: durations must be positive");
    total += dur;
  }
  std::vector<double> out(static_cast<size_t>(total) * d);
  int row = 0;
  for (int i = 0; i < p; ++i)
    for (int rep = 0; rep < durations[i]; ++rep, ++row)
      std::copy_n(x.values().data() + static_cast<size_t>(i) * d, d,
                  out.data() + static_cast<size_t>(row) * d);
  auto px = x.impl();
  auto durs = durations;
  return MakeOp({total, d}, std::move(out), {x},
                [px, d, durs](TensorImpl& self) {
                  double* gx = GradOf(px);
                  if (!gx) return;
                  int row = 0;
                  for (size_t i = 0; i < durs.size(); ++i)
                    for (int rep = 0; rep < durs[i]; ++rep, ++row)
                      for (int c = 0; c < d; ++c)
                        gx[i * d + c] +=
                            self.g[static_cast<size_t>(row) * d + c];
                });
}

Tensor SegmentMean(const Tensor& x, const std::vector<int>& durations) {
  int t = x.rows(), d = x.cols();
  int total = 0;
  for (int dur : durations) {
    if (dur <= 0)
      throw std::invalid_argument("SegmentMean: durations must be positive");
    total += dur;
  }
  if (total != t)
    throw std::invalid_argument("SegmentMean: durations do not sum to rows");
  int p = static_cast<int>(durations.size());
  std::vector<double> out(static_cast<size_t>(p) * d, 0.0);
  int row = 0;
  for (int i = 0; i < p; ++i) {
    for (int rep = 0; rep < durations[i]; ++rep, ++row)
      for (int c = 0; c < d; ++c)
        out[static_cast<size_t>(i) * d + c] +=
            x.values()[static_cast<size_t>(row) * d + c];
    for (int c = 0; c < d; ++c)
      out[static_cast<size_t>(i) * d + c] /= durations[i];
  }
  auto px = x.impl();
  auto durs = durations;
  return MakeOp({p, d}, std::move(out), {x}, [px, d, durs](TensorImpl& self) {
    double* gx = GradOf(px);
    if (!gx) return;
    int row = 0;
    for (size_t i = 0; i < durs.size(); ++i)
      for (int rep = 0; rep < durs[i]; ++rep, ++row)
        for (int c = 0; c < d; ++c)
          gx[static_cast<size_t>(row) * d + c] +=
              self.g[i * d + c] / durs[i];
  });
}

Tensor SumAll(const Tensor& a) {
  double sum = 0.0;
  for (double x : a.values()) sum += x;
  auto pa = a.impl();
  return MakeOp({1}, {sum}, {a}, [pa](TensorImpl& self) {
    if (double* ga = GradOf(pa))
      for (size_t i = 0; i < pa->v.size(); ++i) ga[i] += self.g[0];
  });
}

Tensor MeanAll(const Tensor& a) {
  return Scale(SumAll(a), 1.0 / static_cast<double>(a.numel()));
}

Tensor MeanOverRows(const Tensor& x) {
  int t = x.rows(), d = x.cols();
  std::vector<double> out(d, 0.0);
  for (int r = 0; r < t; ++r)
    for (int c = 0; c < d; ++c)
      out[c] += x.values()[static_cast<size_t>(r) * d + c];
  for (int c = 0; c < d; ++c) out[c] /= t;
  auto px = x.impl();
  return MakeOp({d}, std::move(out), {x}, [px, t, d](TensorImpl& self) {
    double* gx = GradOf(px);
    if (!gx) return;
    for (int r = 0; r < t; ++r)
      for (int c = 0; c < d; ++c)
        gx[static_cast<size_t>(r) * d + c] += self.g[c] / t;
  });
}

Tensor L1Loss(const Tensor& a, const Tensor& b) {
  RequireSameShape(a, b, "L1Loss");
  double sum = 0.0;
  for (size_t i = 0; i < a.numel(); ++i)
    sum += std::fabs(a.values()[i] - b.values()[i]);
  double n = static_cast<double>(a.numel());
  auto pa = a.impl(), pb = b.impl();
  return MakeOp({1}, {sum / n}, {a, b}, [pa, pb, n](TensorImpl& self) {
    double* ga = GradOf(pa);
    double* gb = GradOf(pb);
    for (size_t i = 0; i < pa->v.size(); ++i) {
      double diff = pa->v[i] - pb->v[i];
      double s = diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0);
      double gi = self.g[0] * s / n;
      if (ga) ga[i] += gi;
      if (gb) gb[i] -= gi;
    }
  });
}

Tensor MseLoss(const Tensor& a, const Tensor& b) {
  RequireSameShape(a, b, "MseLoss");
  double sum = 0.0;
  for (size_t i = 0; i < a.numel(); ++i) {
    double d = a.values()[i] - b.values()[i];
    sum += d * d;
  }
  double n = static_cast<double>(a.numel());
  auto pa = a.impl(), pb = b.impl();
  return MakeOp({1}, {sum / n}, {a, b}, [pa, pb, n](TensorImpl& self) {
    double* ga = GradOf(pa);
    double* gb = GradOf(pb);
    for (size_t i = 0; i < pa->v.size(); ++i) {
      double gi = self.g[0] * 2.0 * (pa->v[i] - pb->v[i]) / n;
      if (ga) ga[i] += gi;
      if (gb) gb[i] -= gi;
    }
  });
}

Tensor CrossEntropyLogits(const Tensor& logits,
                          const std::vector<int>& labels) {
  int n = logits.rows(), k = logits.cols();
  if (static_cast<int>(labels.size()) != n)
    throw std::invalid_argument("CrossEntropyLogits: label count mismatch");
  std::vector<double> probs(logits.numel());
  double loss = 0.0;
  for (int r = 0; r < n; ++r) {
    const double* in = logits.values().data() + static_cast<size_t>(r) * k;
    double* p = probs.data() + static_cast<size_t>(r) * k;
    double mx = in[0];
    for (int c = 1; c < k; ++c) mx = std::max(mx, in[c]);
    double sum = 0.0;
    for (int c = 0; c < k; ++c) {
      p[c] = std::exp(in[c] - mx);
      sum += p[c];
    }
    for (int c = 0; c < k; ++c) p[c] /= sum;
    int label = labels[r];
    if (label < 0 || label >= k)
      throw std::invalid_argument("CrossEntropyLogits: label out of range");
    loss -= std::log(std::max(p[label], 1e-300));
  }
  loss /= n;
  auto pl = logits.impl();
  auto lab = labels;
  return MakeOp({1}, {loss}, {logits},
                [pl, n, k, probs, lab](TensorImpl& self) {
                  double* gl = GradOf(pl);
                  if (!gl) return;
                  for (int r = 0; r < n; ++r)
                    for (int c = 0; c < k; ++c) {
                      double delta = (c == lab[r]) ? 1.0 : 0.0;
                      gl[static_cast<size_t>(r) * k + c] +=
                          self.g[0] *
                          (probs[static_cast<size_t>(r) * k + c] - delta) / n;
                    }
                });
}

Tensor GaussianLogProbMatrix(const Tensor& mean, const Tensor& logvar,
                             const Tensor& x) {
  RequireSameShape(mean, logvar, "GaussianLogProbMatrix");
  if (x.cols() != mean.cols())
    throw std::invalid_argument("GaussianLogProbMatrix: dim mismatch");
  int b = mean.rows(), d = mean.cols(), bx = x.rows();
  std::vector<double> out(static_cast<size_t>(b) * bx);
  const double* mv = mean.values().data();
  const double* lv = logvar.values().data();
  const double* xv = x.values().data();
  for (int i = 0; i < b; ++i)
    for (int j = 0; j < bx; ++j) {
      double acc = 0.0;
      for (int c = 0; c < d; ++c) {
        double l = lv[static_cast<size_t>(i) * d + c];
        double diff = xv[static_cast<size_t>(j) * d + c] -
                      mv[static_cast<size_t>(i) * d + c];
        acc += -0.5 * (kLog2Pi + l + diff * diff * std::exp(-l));
      }
      out[static_cast<size_t>(i) * bx + j] = acc;
    }
  auto pm = mean.impl(), pl = logvar.impl(), px = x.impl();
  return MakeOp({b, bx}, std::move(out), {mean, logvar, x},
                [pm, pl, px, b, d, bx](TensorImpl& self) {
                  double* gm = GradOf(pm);
                  double* glv = GradOf(pl);
                  double* gx = GradOf(px);
                  const double* mv = pm->v.data();
                  const double* lv = pl->v.data();
                  const double* xv = px->v.data();
                  for (int i = 0; i < b; ++i)
                    for (int j = 0; j < bx; ++j) {
                      double go = self.g[static_cast<size_t>(i) * bx + j];
                      if (go == 0.0) continue;
                      for (int c = 0; c < d; ++c) {
                        size_t im = static_cast<size_t>(i) * d + c;
                        size_t jx = static_cast<size_t>(j) * d + c;
                        double prec = std::exp(-lv[im]);
                        double diff = xv[jx] - mv[im];
                        if (gm) gm[im] += go * diff * prec;
                        if (glv)
                          glv[im] += go * (-0.5 + 0.5 * diff * diff * prec);
                        if (gx) gx[jx] += go * (-diff * prec);
                      }
                    }
                });
}

Tensor DiagMean(const Tensor& square) {
  int b = square.rows();
  if (square.cols() != b)
    throw std::invalid_argument("DiagMean: square matrix required");
  double sum = 0.0;
  for (int i = 0; i < b; ++i) sum += square.at(i, i);
  auto ps = square.impl();
  return MakeOp({1}, {sum / b}, {square}, [ps, b](TensorImpl& self) {
    if (double* gs = GradOf(ps))
      for (int i = 0; i < b; ++i)
        gs[static_cast<size_t>(i) * b + i] += self.g[0] / b;
  });
}

}  // namespace xltts
