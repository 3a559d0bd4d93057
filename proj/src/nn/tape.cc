// Copyright 2026 The Spacetime-GR Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stgr/nn/tape.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "stgr/nn/linalg.h"

namespace stgr::nn {
namespace {

constexpr double kProbClamp = 1e-12;

// log(1 + e^x) without overflow.
double Softplus(double x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

template <typename T>
double LogSumExp(const T* x, int n) {
  double mx = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) mx = std::max(mx, static_cast<double>(x[i]));
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += std::exp(static_cast<double>(x[i]) - mx);
  return mx + std::log(s);
}

double LogSumExp(const std::vector<double>& x) {
  return LogSumExp(x.data(), static_cast<int>(x.size()));
}

// Rotary tables: angle(pos, t) = pos * base^(-2t / head_dim).
struct Rope {
  int half = 0;
  std::vector<double> cos, sin;  // [token][t]

  Rope(const std::vector<int>& positions, int head_dim, double base) {
    half = head_dim / 2;
    cos.resize(positions.size() * half);
    sin.resize(positions.size() * half);
    for (std::size_t i = 0; i < positions.size(); ++i) {
      for (int t = 0; t < half; ++t) {
        const double freq = std::pow(base, -2.0 * t / head_dim);
        const double a = positions[i] * freq;
        cos[i * half + t] = std::cos(a);
        sin[i * half + t] = std::sin(a);
      }
    }
  }

  // Rotates one head slice in place; transpose = true applies the inverse.
  template <typename T>
  void Apply(T* x, std::size_t token, bool transpose) const {
    for (int t = 0; t < half; ++t) {
      const double c = cos[token * half + t];
      const double s = transpose ? -sin[token * half + t] : sin[token * half + t];
      const double x0 = x[2 * t], x1 = x[2 * t + 1];
      x[2 * t] = static_cast<T>(x0 * c - x1 * s);
      x[2 * t + 1] = static_cast<T>(x0 * s + x1 * c);
    }
  }
};

}  // namespace

template <typename T>
Tape<T>::Tape(const ParameterSet<T>& params, Gradients<T>* grads)
    : params_(params), grads_(grads) {
  if (grads_ && grads_->size() != params_.size()) {
    throw UsageError("gradient buffer does not match parameter set");
  }
}

template <typename T>
typename Tape<T>::Var Tape<T>::Push(Matrix<T> value, bool needs_grad) {
  Node n;
  n.value = std::move(value);
  n.needs_grad = needs_grad && recording();
  nodes_.push_back(std::move(n));
  return static_cast<Var>(nodes_.size()) - 1;
}

template <typename T>
bool Tape<T>::AnyNeeds(std::initializer_list<Var> vars) const {
  for (Var v : vars) {
    if (Needs(v)) return true;
  }
  return false;
}

template <typename T>
Matrix<T>& Tape<T>::GradOf(Var v) {
  Node& n = nodes_[v];
  if (n.grad.empty()) n.grad = Matrix<T>(n.value.rows(), n.value.cols());
  return n.grad;
}

template <typename T>
void Tape<T>::Record(Var out, std::function<void()> fn) {
  if (nodes_[out].needs_grad) nodes_[out].backward = std::move(fn);
}

template <typename T>
typename Tape<T>::Var Tape<T>::Input(Matrix<T> m) {
  return Push(std::move(m), false);
}

template <typename T>
typename Tape<T>::Var Tape<T>::Leaf(Matrix<T> m) {
  return Push(std::move(m), true);
}

template <typename T>
typename Tape<T>::Var Tape<T>::Param(int id) {
  const Var out = Push(params_.value(id), true);
  Record(out, [this, out, id] {
    const Matrix<T>& g = nodes_[out].grad;
    Matrix<T>& dst = grads_->Get(id);
    for (std::size_t i = 0; i < g.size(); ++i) dst[i] += g[i];
  });
  return out;
}

template <typename T>
typename Tape<T>::Var Tape<T>::Linear(Var x, int weight) {
  const Matrix<T>& w = params_.value(weight);
  const Matrix<T>& xv = value(x);
  CheckShape(xv.cols() == w.rows(),
             "linear " + params_.name(weight) + ": input width " +
                 std::to_string(xv.cols()) + " vs " + std::to_string(w.rows()));
  const int n = xv.rows(), k = w.rows(), m = w.cols();
  Matrix<T> y(n, m);
  la::MatMul(xv.data(), w.data(), y.data(), n, k, m);
  const Var out = Push(std::move(y), true);
  Record(out, [this, out, x, weight, n, k, m] {
    const Matrix<T>& dy = nodes_[out].grad;
    const Matrix<T>& w = params_.value(weight);
    if (Needs(x)) la::MatMulNtAcc(dy.data(), w.data(), GradOf(x).data(), n, k, m);
    la::MatMulTnAcc(value(x).data(), dy.data(), grads_->Get(weight).data(), n, k, m);
  });
  return out;
}

template <typename T>
typename Tape<T>::Var Tape<T>::Gather(int table, const std::vector<int>& rows,
                                      int per_token) {
  const Matrix<T>& tab = params_.value(table);
  CheckShape(per_token > 0 && rows.size() % per_token == 0, "gather layout");
  const int n = static_cast<int>(rows.size()) / per_token;
  const int c = tab.cols();
  Matrix<T> y(n, per_token * c);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < per_token; ++j) {
      const int r = rows[static_cast<std::size_t>(i) * per_token + j];
      if (r < 0 || r >= tab.rows()) {
        throw UsageError("gather " + params_.name(table) + ": row " +
                         std::to_string(r) + " out of range");
      }
      std::copy_n(tab.row(r), c, y.row(i) + j * c);
    }
  }
  const Var out = Push(std::move(y), true);
  Record(out, [this, out, table, rows, per_token, n, c] {
    const Matrix<T>& dy = nodes_[out].grad;
    Matrix<T>& g = grads_->Get(table);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < per_token; ++j) {
        const int r = rows[static_cast<std::size_t>(i) * per_token + j];
        T* dst = g.row(r);
        const T* src = dy.row(i) + j * c;
        for (int q = 0; q < c; ++q) dst[q] += src[q];
      }
    }
  });
  return out;
}

template <typename T>
typename Tape<T>::Var Tape<T>::Arrange(const std::vector<Var>& sources,
                                       const std::vector<std::pair<int, int>>& layout) {
  CheckShape(!sources.empty(), "arrange without sources");
  const int c = value(sources[0]).cols();
  bool needs = false;
  for (Var s : sources) {
    CheckShape(value(s).cols() == c, "arrange sources differ in width");
    needs = needs || Needs(s);
  }
  Matrix<T> y(static_cast<int>(layout.size()), c);
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const auto [src, r] = layout[i];
    CheckShape(src >= 0 && src < static_cast<int>(sources.size()) && r >= 0 &&
                   r < value(sources[src]).rows(),
               "arrange index");
    std::copy_n(value(sources[src]).row(r), c, y.row(static_cast<int>(i)));
  }
  const Var out = Push(std::move(y), needs);
  Record(out, [this, out, sources, layout, c] {
    const Matrix<T>& dy = nodes_[out].grad;
    for (std::size_t i = 0; i < layout.size(); ++i) {
      const auto [src, r] = layout[i];
      if (!Needs(sources[src])) continue;
      T* dst = GradOf(sources[src]).row(r);
      const T* g = dy.row(static_cast<int>(i));
      for (int q = 0; q < c; ++q) dst[q] += g[q];
    }
  });
  return out;
}

template <typename T>
typename Tape<T>::Var Tape<T>::Add(Var a, Var b) {
  const Matrix<T>& av = value(a);
  const Matrix<T>& bv = value(b);
  CheckShape(av.rows() == bv.rows() && av.cols() == bv.cols(), "add");
  Matrix<T> y = av;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += bv[i];
  const Var out = Push(std::move(y), AnyNeeds({a, b}));
  Record(out, [this, out, a, b] {
    const Matrix<T>& dy = nodes_[out].grad;
    for (Var v : {a, b}) {
      if (!Needs(v)) continue;
      Matrix<T>& g = GradOf(v);
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += dy[i];
    }
  });
  return out;
}

template <typename T>
typename Tape<T>::Var Tape<T>::Mix(const std::vector<Var>& parts, Var logits) {
  const Matrix<T>& lv = value(logits);
  const int k = static_cast<int>(parts.size());
  CheckShape(k > 0 && lv.rows() == 1 && lv.cols() == k, "mix logits");
  const double lse = LogSumExp(lv.data(), k);
  std::vector<T> w(k);
  for (int j = 0; j < k; ++j) w[j] = static_cast<T>(std::exp(lv[j] - lse));
  const Matrix<T>& first = value(parts[0]);
  Matrix<T> y(first.rows(), first.cols());
  bool needs = Needs(logits);
  for (int j = 0; j < k; ++j) {
    const Matrix<T>& p = value(parts[j]);
    CheckShape(p.rows() == y.rows() && p.cols() == y.cols(), "mix parts");
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += w[j] * p[i];
    needs = needs || Needs(parts[j]);
  }
  const Var out = Push(std::move(y), needs);
  Record(out, [this, out, parts, logits, w, k] {
    const Matrix<T>& dy = nodes_[out].grad;
    std::vector<double> gw(k, 0.0);
    for (int j = 0; j < k; ++j) {
      const Matrix<T>& p = value(parts[j]);
      for (std::size_t i = 0; i < dy.size(); ++i) {
        gw[j] += static_cast<double>(dy[i]) * p[i];
      }
      if (Needs(parts[j])) {
        Matrix<T>& g = GradOf(parts[j]);
        for (std::size_t i = 0; i < g.size(); ++i) g[i] += w[j] * dy[i];
      }
    }
    if (Needs(logits)) {
      double mean = 0.0;
      for (int j = 0; j < k; ++j) mean += w[j] * gw[j];
      Matrix<T>& g = GradOf(logits);
      for (int j = 0; j < k; ++j) g[j] += static_cast<T>(w[j] * (gw[j] - mean));
    }
  });
  return out;
}

template <typename T>
typename Tape<T>::Var Tape<T>::RmsNorm(Var x, int gain, double eps) {
  const Matrix<T>& xv = value(x);
  const Matrix<T>& gv = params_.value(gain);
  const int n = xv.rows(), d = xv.cols();
  CheckShape(gv.rows() == 1 && gv.cols() == d, "rms norm gain");
  Matrix<T> y(n, d);
  std::vector<T> inv(n);
  for (int r = 0; r < n; ++r) {
    const T* xr = xv.row(r);
    double ss = 0.0;
    for (int c = 0; c < d; ++c) ss += static_cast<double>(xr[c]) * xr[c];
    inv[r] = static_cast<T>(1.0 / std::sqrt(ss / d + eps));
    T* yr = y.row(r);
    for (int c = 0; c < d; ++c) yr[c] = xr[c] * inv[r] * gv[c];
  }
  const Var out = Push(std::move(y), true);
  Record(out, [this, out, x, gain, inv, n, d] {
    const Matrix<T>& dy = nodes_[out].grad;
    const Matrix<T>& xv = value(x);
    const Matrix<T>& gv = params_.value(gain);
    Matrix<T>& dg = grads_->Get(gain);
    for (int r = 0; r < n; ++r) {
      const T* xr = xv.row(r);
      const T* dyr = dy.row(r);
      double dot = 0.0;  // sum dxhat * xhat
      for (int c = 0; c < d; ++c) {
        const double xhat = static_cast<double>(xr[c]) * inv[r];
        dg[c] += static_cast<T>(dyr[c] * xhat);
        dot += static_cast<double>(dyr[c]) * gv[c] * xhat;
      }
      if (!Needs(x)) continue;
      T* dxr = GradOf(x).row(r);
      const double mean = dot / d;
      for (int c = 0; c < d; ++c) {
        const double xhat = static_cast<double>(xr[c]) * inv[r];
        dxr[c] += static_cast<T>(inv[r] * (static_cast<double>(dyr[c]) * gv[c] -
                                           xhat * mean));
      }
    }
  });
  return out;
}

template <typename T>
typename Tape<T>::Var Tape<T>::Attention(Var q, Var k, Var v, int heads,
                                         const std::vector<int>& positions,
                                         const AttentionMask& mask,
                                         double rope_base) {
  const int n = value(q).rows(), d = value(q).cols();
  CheckShape(value(k).rows() == n && value(v).rows() == n && value(k).cols() == d &&
                 value(v).cols() == d,
             "attention q/k/v");
  CheckShape(heads > 0 && d % heads == 0 && (d / heads) % 2 == 0,
             "attention head split (head width must be even)");
  CheckShape(static_cast<int>(positions.size()) == n && mask.size() == n,
             "attention mask/positions length");
  const int hd = d / heads;
  const T scale = static_cast<T>(1.0 / std::sqrt(static_cast<double>(hd)));
  auto rope = std::make_shared<Rope>(positions, hd, rope_base);

  // Rotated copies of q and k.
  auto qr = std::make_shared<Matrix<T>>(value(q));
  auto kr = std::make_shared<Matrix<T>>(value(k));
  for (int i = 0; i < n; ++i) {
    for (int h = 0; h < heads; ++h) {
      rope->Apply(qr->row(i) + h * hd, i, false);
      rope->Apply(kr->row(i) + h * hd, i, false);
    }
  }
  // Attention weights per (head, query) over that query's allowed keys.
  std::vector<std::size_t> offset(n + 1, 0);
  for (int i = 0; i < n; ++i) offset[i + 1] = offset[i] + mask.keys(i).size();
  auto probs = std::make_shared<std::vector<T>>(offset[n] * heads);
  const Matrix<T>& vv = value(v);
  Matrix<T> y(n, d);
  std::vector<double> s;
  for (int h = 0; h < heads; ++h) {
    for (int i = 0; i < n; ++i) {
      const auto& keys = mask.keys(i);
      s.resize(keys.size());
      double mx = -std::numeric_limits<double>::infinity();
      const T* qi = qr->row(i) + h * hd;
      for (std::size_t a = 0; a < keys.size(); ++a) {
        s[a] = static_cast<double>(la::Dot(qi, kr->row(keys[a]) + h * hd, hd) * scale);
        mx = std::max(mx, s[a]);
      }
      double z = 0.0;
      for (double& e : s) {
        e = std::exp(e - mx);
        z += e;
      }
      T* p = probs->data() + offset[n] * h + offset[i];
      T* yi = y.row(i) + h * hd;
      for (std::size_t a = 0; a < keys.size(); ++a) {
        p[a] = static_cast<T>(s[a] / z);
        la::Axpy(p[a], vv.row(keys[a]) + h * hd, yi, hd);
      }
    }
  }
  const Var out = Push(std::move(y), AnyNeeds({q, k, v}));
  Record(out, [this, out, q, k, v, heads, hd, scale, n, d, rope, qr, kr, probs,
               offset, mask] {
    const Matrix<T>& dy = nodes_[out].grad;
    const Matrix<T>& vv = value(v);
    Matrix<T> dqr(n, d), dkr(n, d);
    Matrix<T>* dv = Needs(v) ? &GradOf(v) : nullptr;
    std::vector<T> dp;
    for (int h = 0; h < heads; ++h) {
      for (int i = 0; i < n; ++i) {
        const auto& keys = mask.keys(i);
        const T* p = probs->data() + offset[n] * h + offset[i];
        const T* dyi = dy.row(i) + h * hd;
        dp.resize(keys.size());
        double sum = 0.0;
        for (std::size_t a = 0; a < keys.size(); ++a) {
          dp[a] = la::Dot(dyi, vv.row(keys[a]) + h * hd, hd);
          sum += static_cast<double>(p[a]) * dp[a];
          if (dv) la::Axpy(p[a], dyi, dv->row(keys[a]) + h * hd, hd);
        }
        const T* qi = qr->row(i) + h * hd;
        T* dqi = dqr.row(i) + h * hd;
        for (std::size_t a = 0; a < keys.size(); ++a) {
          const T ds = static_cast<T>(p[a] * (dp[a] - sum)) * scale;
          if (ds == T(0)) continue;
          la::Axpy(ds, kr->row(keys[a]) + h * hd, dqi, hd);
          la::Axpy(ds, qi, dkr.row(keys[a]) + h * hd, hd);
        }
      }
    }
    for (auto [src, dst] : {std::pair{&dqr, q}, std::pair{&dkr, k}}) {
      if (!Needs(dst)) continue;
      Matrix<T>& g = GradOf(dst);
      for (int i = 0; i < n; ++i) {
        for (int h = 0; h < heads; ++h) rope->Apply(src->row(i) + h * hd, i, true);
        const T* s = src->row(i);
        T* gi = g.row(i);
        for (int c = 0; c < d; ++c) gi[c] += s[c];
      }
    }
  });
  return out;
}

template <typename T>
typename Tape<T>::Var Tape<T>::SwiGlu(Var a, Var b) {
  const Matrix<T>& av = value(a);
  const Matrix<T>& bv = value(b);
  CheckShape(av.rows() == bv.rows() && av.cols() == bv.cols(), "swiglu");
  Matrix<T> y(av.rows(), av.cols());
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = static_cast<T>(av[i] * Sigmoid(av[i]) * bv[i]);
  }
  const Var out = Push(std::move(y), AnyNeeds({a, b}));
  Record(out, [this, out, a, b] {
    const Matrix<T>& dy = nodes_[out].grad;
    const Matrix<T>& av = value(a);
    const Matrix<T>& bv = value(b);
    Matrix<T>* da = Needs(a) ? &GradOf(a) : nullptr;
    Matrix<T>* db = Needs(b) ? &GradOf(b) : nullptr;
    for (std::size_t i = 0; i < dy.size(); ++i) {
      const double sg = Sigmoid(av[i]);
      const double silu = av[i] * sg;
      if (da) (*da)[i] += static_cast<T>(dy[i] * bv[i] * sg * (1.0 + av[i] * (1.0 - sg)));
      if (db) (*db)[i] += static_cast<T>(dy[i] * silu);
    }
  });
  return out;
}

template <typename T>
typename Tape<T>::Var Tape<T>::Sum(const std::vector<Var>& scalars, T scale) {
  double s = 0.0;
  bool needs = false;
  for (Var v : scalars) {
    CheckShape(value(v).size() == 1, "sum of non-scalars");
    s += value(v)[0];
    needs = needs || Needs(v);
  }
  const Var out = Push(Matrix<T>(1, 1, static_cast<T>(s * scale)), needs);
  Record(out, [this, out, scalars, scale] {
    const T g = nodes_[out].grad[0] * scale;
    for (Var v : scalars) {
      if (Needs(v)) GradOf(v)[0] += g;
    }
  });
  return out;
}

template <typename T>
typename Tape<T>::Var Tape<T>::CrossEntropy(Var logits, const std::vector<int>& targets,
                                            T scale) {
  const Matrix<T>& lv = value(logits);
  const int n = lv.rows(), V = lv.cols();
  CheckShape(static_cast<int>(targets.size()) == n, "cross entropy targets");
  std::vector<double> lse(n);
  double loss = 0.0;
  for (int r = 0; r < n; ++r) {
    if (targets[r] < 0 || targets[r] >= V) {
      throw UsageError("cross entropy target " + std::to_string(targets[r]) +
                       " outside [0, " + std::to_string(V) + ")");
    }
    lse[r] = LogSumExp(lv.row(r), V);
    loss += lse[r] - lv(r, targets[r]);
  }
  const Var out = Push(Matrix<T>(1, 1, static_cast<T>(loss * scale)), Needs(logits));
  Record(out, [this, out, logits, targets, lse, scale, n, V] {
    const double g = static_cast<double>(nodes_[out].grad[0]) * scale;
    const Matrix<T>& lv = value(logits);
    Matrix<T>& dl = GradOf(logits);
    for (int r = 0; r < n; ++r) {
      const T* l = lv.row(r);
      T* d = dl.row(r);
      for (int c = 0; c < V; ++c) d[c] += static_cast<T>(g * std::exp(l[c] - lse[r]));
      d[targets[r]] -= static_cast<T>(g);
    }
  });
  return out;
}

template <typename T>
typename Tape<T>::Var Tape<T>::LogSoftmaxAt(Var logits, const std::vector<int>& cols) {
  const Matrix<T>& lv = value(logits);
  const int n = lv.rows(), V = lv.cols();
  CheckShape(static_cast<int>(cols.size()) == n, "log softmax columns");
  std::vector<double> lse(n);
  Matrix<T> y(n, 1);
  for (int r = 0; r < n; ++r) {
    if (cols[r] < 0 || cols[r] >= V) throw UsageError("log softmax column out of range");
    lse[r] = LogSumExp(lv.row(r), V);
    y[r] = static_cast<T>(lv(r, cols[r]) - lse[r]);
  }
  const Var out = Push(std::move(y), Needs(logits));
  Record(out, [this, out, logits, cols, lse, n, V] {
    const Matrix<T>& dy = nodes_[out].grad;
    const Matrix<T>& lv = value(logits);
    Matrix<T>& dl = GradOf(logits);
    for (int r = 0; r < n; ++r) {
      const double g = dy[r];
      const T* l = lv.row(r);
      T* d = dl.row(r);
      for (int c = 0; c < V; ++c) d[c] -= static_cast<T>(g * std::exp(l[c] - lse[r]));
      d[cols[r]] += static_cast<T>(g);
    }
  });
  return out;
}

template <typename T>
typename Tape<T>::Var Tape<T>::BceWithLogits(Var z, const std::vector<int>& y) {
  const Matrix<T>& zv = value(z);
  CheckShape(zv.cols() == 1 && static_cast<int>(y.size()) == zv.rows(), "bce labels");
  double loss = 0.0;
  for (int r = 0; r < zv.rows(); ++r) {
    const double p = y[r] ? Sigmoid(zv[r]) : Sigmoid(-zv[r]);
    loss -= std::log(std::max(p, kProbClamp));
  }
  const Var out = Push(Matrix<T>(1, 1, static_cast<T>(loss)), Needs(z));
  Record(out, [this, out, z, y] {
    const double g = nodes_[out].grad[0];
    const Matrix<T>& zv = value(z);
    Matrix<T>& dz = GradOf(z);
    for (int r = 0; r < zv.rows(); ++r) {
      // p = probability assigned to the observed label.
      const double p = y[r] ? Sigmoid(zv[r]) : Sigmoid(-zv[r]);
      if (p <= kProbClamp) continue;  // clamped: flat
      const double dlogp_dz = y[r] ? (1.0 - p) : -(1.0 - p);
      dz[r] -= static_cast<T>(g * dlogp_dz);
    }
  });
  return out;
}

template <typename T>
typename Tape<T>::Var Tape<T>::CosineRows(Var a, Var b) {
  const Matrix<T>& av = value(a);
  const Matrix<T>& bv = value(b);
  const int n = bv.rows(), d = bv.cols();
  const bool broadcast = av.rows() == 1 && n != 1;
  CheckShape(av.cols() == d && (broadcast || av.rows() == n), "cosine rows");
  Matrix<T> y(n, 1);
  std::vector<double> na(n), nb(n);
  for (int r = 0; r < n; ++r) {
    const T* ar = av.row(broadcast ? 0 : r);
    const T* br = bv.row(r);
    double aa = 0, bb = 0, ab = 0;
    for (int c = 0; c < d; ++c) {
      aa += static_cast<double>(ar[c]) * ar[c];
      bb += static_cast<double>(br[c]) * br[c];
      ab += static_cast<double>(ar[c]) * br[c];
    }
    if (aa == 0.0 || bb == 0.0) throw NumericError("cosine of a zero-norm embedding");
    na[r] = std::sqrt(aa);
    nb[r] = std::sqrt(bb);
    y[r] = static_cast<T>(ab / (na[r] * nb[r]));
  }
  const Var out = Push(std::move(y), AnyNeeds({a, b}));
  Record(out, [this, out, a, b, na, nb, n, d, broadcast] {
    const Matrix<T>& dy = nodes_[out].grad;
    const Matrix<T>& av = value(a);
    const Matrix<T>& bv = value(b);
    const Matrix<T>& cv = value(out);
    for (int r = 0; r < n; ++r) {
      const int ra = broadcast ? 0 : r;
      const T* ar = av.row(ra);
      const T* br = bv.row(r);
      const double g = dy[r], cs = cv[r];
      if (Needs(a)) {
        T* da = GradOf(a).row(ra);
        for (int c = 0; c < d; ++c) {
          da[c] += static_cast<T>(g * (br[c] / (na[r] * nb[r]) -
                                       cs * ar[c] / (na[r] * na[r])));
        }
      }
      if (Needs(b)) {
        T* db = GradOf(b).row(r);
        for (int c = 0; c < d; ++c) {
          db[c] += static_cast<T>(g * (ar[c] / (na[r] * nb[r]) -
                                       cs * br[c] / (nb[r] * nb[r])));
        }
      }
    }
  });
  return out;
}

template <typename T>
typename Tape<T>::Var Tape<T>::InfoNce(Var cos, const std::vector<int>& is_positive,
                                       T tau) {
  const Matrix<T>& cv = value(cos);
  const int n = cv.rows();
  CheckShape(cv.cols() == 1 && static_cast<int>(is_positive.size()) == n, "infonce");
  if (!(tau > 0)) throw UsageError("infonce temperature must be > 0");
  std::vector<double> all, pos;
  for (int r = 0; r < n; ++r) {
    const double s = static_cast<double>(cv[r]) / tau;
    all.push_back(s);
    if (is_positive[r]) pos.push_back(s);
  }
  if (pos.empty()) throw UsageError("infonce needs at least one positive");
  const double lse_all = LogSumExp(all);
  const double lse_pos = LogSumExp(pos);
  const Var out = Push(Matrix<T>(1, 1, static_cast<T>(lse_all - lse_pos)), Needs(cos));
  Record(out, [this, out, cos, is_positive, all, lse_all, lse_pos, tau, n] {
    const double g = nodes_[out].grad[0];
    Matrix<T>& dc = GradOf(cos);
    for (int r = 0; r < n; ++r) {
      double d = std::exp(all[r] - lse_all);
      if (is_positive[r]) d -= std::exp(all[r] - lse_pos);
      dc[r] += static_cast<T>(g * d / tau);
    }
  });
  return out;
}

template <typename T>
typename Tape<T>::Var Tape<T>::Dpo(Var logp_pos, Var logp_neg,
                                   const std::vector<T>& ref_pos,
                                   const std::vector<T>& ref_neg, T beta) {
  const Matrix<T>& ap = value(logp_pos);
  const Matrix<T>& an = value(logp_neg);
  const int np = ap.rows(), nn = an.rows();
  CheckShape(ap.cols() == 1 && an.cols() == 1 &&
                 static_cast<int>(ref_pos.size()) == np &&
                 static_cast<int>(ref_neg.size()) == nn,
             "dpo inputs");
  double loss = 0.0;
  for (int j = 0; j < np; ++j) {
    for (int k = 0; k < nn; ++k) {
      const double z = (static_cast<double>(ap[j]) - ref_pos[j]) -
                       (static_cast<double>(an[k]) - ref_neg[k]);
      loss += Softplus(-beta * z);
    }
  }
  const Var out = Push(Matrix<T>(1, 1, static_cast<T>(loss)), AnyNeeds({logp_pos, logp_neg}));
  Record(out, [this, out, logp_pos, logp_neg, ref_pos, ref_neg, beta, np, nn] {
    const double g = nodes_[out].grad[0];
    const Matrix<T>& ap = value(logp_pos);
    const Matrix<T>& an = value(logp_neg);
    std::vector<double> gp(np, 0.0), gn(nn, 0.0);
    for (int j = 0; j < np; ++j) {
      for (int k = 0; k < nn; ++k) {
        const double z = (static_cast<double>(ap[j]) - ref_pos[j]) -
                         (static_cast<double>(an[k]) - ref_neg[k]);
        const double dz = -beta * Sigmoid(-beta * z);
        gp[j] += dz;
        gn[k] -= dz;
      }
    }
    if (Needs(logp_pos)) {
      Matrix<T>& d = GradOf(logp_pos);
      for (int j = 0; j < np; ++j) d[j] += static_cast<T>(g * gp[j]);
    }
    if (Needs(logp_neg)) {
      Matrix<T>& d = GradOf(logp_neg);
      for (int k = 0; k < nn; ++k) d[k] += static_cast<T>(g * gn[k]);
    }
  });
  return out;
}

template <typename T>
void Tape<T>::CheckFinite(Var v, const std::string& where) const {
  if (!value(v).AllFinite()) throw NumericError("non-finite values in " + where);
}

template <typename T>
void Tape<T>::Backward(Var loss) {
  if (!recording()) throw UsageError("backward on a tape without gradient buffers");
  CheckShape(value(loss).size() == 1, "backward from a non-scalar");
  CheckFinite(loss, "loss");
  GradOf(loss)[0] = T(1);
  for (Var v = loss; v >= 0; --v) {
    Node& n = nodes_[v];
    if (n.backward && !n.grad.empty()) n.backward();
  }
}

template class Tape<float>;
template class Tape<double>;

}  // namespace stgr::nn
