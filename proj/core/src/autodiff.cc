// Copyright 2026 The DAMNETS Authors
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

#include "damnets/autodiff.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

#include "damnets/error.h"

namespace damnets::ad {

std::string to_string(Shape s) {
  return "(" + std::to_string(s.rows) + " x " + std::to_string(s.cols) + ")";
}

Tensor::Tensor(Shape s, std::vector<double> v) : shape(s), values(std::move(v)) {
  if (values.size() != shape.size()) {
    throw std::invalid_argument("Tensor: value count does not match shape " +
                                to_string(shape));
  }
}

ParamId ParameterStore::add(std::string name, Shape shape, double fill) {
  if (by_name_.count(name)) {
    throw std::invalid_argument("duplicate parameter name: " + name);
  }
  const auto id = static_cast<ParamId>(params_.size());
  by_name_.emplace(name, id);
  params_.push_back(Parameter{std::move(name), Tensor(shape, fill), true});
  return id;
}

ParamId ParameterStore::add_uniform(std::string name, Shape shape, int fan_in,
                                    Uniform01& rng) {
  const ParamId id = add(std::move(name), shape);
  const double bound = 1.0 / std::sqrt(static_cast<double>(std::max(fan_in, 1)));
  for (double& x : params_[static_cast<std::size_t>(id)].tensor.values) {
    x = (2.0 * rng() - 1.0) * bound;
  }
  return id;
}

ParamId ParameterStore::find(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? -1 : it->second;
}

std::size_t ParameterStore::num_scalars() const {
  std::size_t total = 0;
  for (const auto& p : params_) total += p.tensor.values.size();
  return total;
}

Gradients zero_gradients(const ParameterStore& store) {
  Gradients g;
  g.reserve(store.size());
  for (const auto& p : store.all()) g.emplace_back(p.tensor.shape);
  return g;
}

void accumulate(Gradients& dst, const Gradients& src, double scale) {
  if (dst.size() != src.size()) throw std::invalid_argument("accumulate: size mismatch");
  for (std::size_t i = 0; i < dst.size(); ++i) {
    auto& d = dst[i].values;
    const auto& s = src[i].values;
    for (std::size_t k = 0; k < d.size(); ++k) d[k] += scale * s[k];
  }
}

// ---- Var ----------------------------------------------------------------

Shape Var::shape() const { return tape_->node(id_).shape; }

std::span<const double> Var::value() const {
  const auto& n = tape_->node(id_);
  return {n.value, n.shape.size()};
}

double Var::item() const {
  const auto& n = tape_->node(id_);
  if (n.shape.size() != 1) {
    throw std::invalid_argument("item() on non-scalar " + to_string(n.shape));
  }
  return n.value[0];
}

double Var::at(int r, int c) const {
  const auto& n = tape_->node(id_);
  return n.value[static_cast<std::size_t>(r) * n.shape.cols + c];
}

// ---- Arena --------------------------------------------------------------

// Block allocator: pointers stay valid for the lifetime of the tape.
class Tape::Arena {
 public:
  double* allocate(std::size_t count, bool zero) {
    if (count == 0) count = 1;
    if (blocks_.empty() || used_ + count > capacity_) {
      const std::size_t cap = std::max(kBlock, count);
      blocks_.push_back(std::make_unique<double[]>(cap));
      capacity_ = cap;
      used_ = 0;
    }
    double* p = blocks_.back().get() + used_;
    used_ += count;
    if (zero) std::memset(p, 0, count * sizeof(double));
    return p;
  }

 private:
  static constexpr std::size_t kBlock = 1 << 15;
  std::vector<std::unique_ptr<double[]>> blocks_;
  std::size_t capacity_ = 0;
  std::size_t used_ = 0;
};

// ---- Tape ---------------------------------------------------------------

Tape::Tape(const ParameterStore* params)
    : params_(params),
      values_(std::make_unique<Arena>()),
      grads_(std::make_unique<Arena>()) {
  nodes_.reserve(1024);
}

Tape::~Tape() = default;

Var Tape::push(Node n) {
  nodes_.push_back(std::move(n));
  return Var(this, static_cast<int>(nodes_.size() - 1));
}

double* Tape::allocate(std::size_t count, bool zero) {
  return values_->allocate(count, zero);
}

Var Tape::constant(Shape shape, std::span<const double> values) {
  if (values.size() != shape.size()) {
    throw std::invalid_argument("constant: value count does not match " +
                                to_string(shape));
  }
  Node n;
  n.shape = shape;
  n.value = allocate(shape.size(), false);
  std::copy(values.begin(), values.end(), n.value);
  return push(std::move(n));
}

Var Tape::constant(Shape shape, double fill) {
  Node n;
  n.shape = shape;
  n.value = allocate(shape.size(), fill == 0.0);
  if (fill != 0.0) std::fill(n.value, n.value + shape.size(), fill);
  return push(std::move(n));
}

Var Tape::input(Shape shape, std::span<const double> values) {
  Var v = constant(shape, values);
  nodes_[static_cast<std::size_t>(v.id())].requires_grad = true;
  return v;
}

Var Tape::param(ParamId id) {
  if (!params_) throw std::logic_error("tape has no parameter store");
  if (auto it = param_nodes_.find(id); it != param_nodes_.end()) {
    return Var(this, it->second);
  }
  const Parameter& p = (*params_)[id];
  Node n;
  n.shape = p.tensor.shape;
  n.value = const_cast<double*>(p.tensor.values.data());
  n.requires_grad = p.trainable;
  n.i0 = id;
  n.scalar = 1.0;  // marks a parameter leaf
  Var v = push(std::move(n));
  param_nodes_.emplace(id, v.id());
  return v;
}

Var Tape::param_detached(ParamId id) {
  if (!params_) throw std::logic_error("tape has no parameter store");
  if (auto it = detached_nodes_.find(id); it != detached_nodes_.end()) {
    return Var(this, it->second);
  }
  const Parameter& p = (*params_)[id];
  Node n;
  n.shape = p.tensor.shape;
  n.value = const_cast<double*>(p.tensor.values.data());
  Var v = push(std::move(n));
  detached_nodes_.emplace(id, v.id());
  return v;
}

std::span<const double> Tape::grad(Var v) const {
  const Node& n = node(v.id());
  if (!backward_done_ || n.grad == nullptr) {
    throw std::logic_error("no gradient recorded for this value");
  }
  return {n.grad, n.shape.size()};
}

namespace {

inline std::size_t bidx(Shape s, int r, int c) {
  return static_cast<std::size_t>(s.rows == 1 ? 0 : r) * s.cols + (s.cols == 1 ? 0 : c);
}

// Adds g (shape out) into target (shape t), summing over broadcast dims.
void reduce_into(double* target, Shape t, const double* g, Shape out, double sign) {
  if (t == out) {
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) target[i] += sign * g[i];
    return;
  }
  for (int r = 0; r < out.rows; ++r) {
    for (int c = 0; c < out.cols; ++c) {
      target[bidx(t, r, c)] += sign * g[static_cast<std::size_t>(r) * out.cols + c];
    }
  }
}

}  // namespace

Gradients Tape::backward(Var loss) {
  if (loss.tape() != this) throw std::invalid_argument("loss is not on this tape");
  if (backward_done_) throw std::logic_error("backward() already ran on this tape");
  if (loss.shape().size() != 1) {
    throw std::invalid_argument("backward: loss must be a scalar, got " +
                                to_string(loss.shape()));
  }
  backward_done_ = true;

  const int last = loss.id();
  for (int i = 0; i <= last; ++i) {
    Node& n = nodes_[static_cast<std::size_t>(i)];
    if (n.requires_grad) n.grad = grads_->allocate(n.shape.size(), true);
  }
  Gradients out = params_ ? zero_gradients(*params_) : Gradients{};
  if (!nodes_[static_cast<std::size_t>(last)].requires_grad) return out;
  nodes_[static_cast<std::size_t>(last)].grad[0] = 1.0;

  for (int i = last; i >= 0; --i) {
    const Node& n = nodes_[static_cast<std::size_t>(i)];
    if (!n.requires_grad) continue;
    const double* g = n.grad;
    const double* y = n.value;
    const std::size_t size = n.shape.size();
    Node* A = n.a >= 0 ? &nodes_[static_cast<std::size_t>(n.a)] : nullptr;
    Node* B = n.b >= 0 ? &nodes_[static_cast<std::size_t>(n.b)] : nullptr;
    const bool ga = A && A->requires_grad;
    const bool gb = B && B->requires_grad;

    switch (n.op) {
      case Op::kLeaf:
        break;
      case Op::kMatMul: {
        const int m = A->shape.rows, k = A->shape.cols, cols = B->shape.cols;
        if (ga) {
          for (int r = 0; r < m; ++r) {
            const double* gr = g + static_cast<std::size_t>(r) * cols;
            double* dar = A->grad + static_cast<std::size_t>(r) * k;
            for (int p = 0; p < k; ++p) {
              const double* br = B->value + static_cast<std::size_t>(p) * cols;
              double acc = 0.0;
              for (int c = 0; c < cols; ++c) acc += gr[c] * br[c];
              dar[p] += acc;
            }
          }
        }
        if (gb) {
          for (int r = 0; r < m; ++r) {
            const double* gr = g + static_cast<std::size_t>(r) * cols;
            const double* ar = A->value + static_cast<std::size_t>(r) * k;
            for (int p = 0; p < k; ++p) {
              const double av = ar[p];
              if (av == 0.0) continue;
              double* dbr = B->grad + static_cast<std::size_t>(p) * cols;
              for (int c = 0; c < cols; ++c) dbr[c] += av * gr[c];
            }
          }
        }
        break;
      }
      case Op::kAdd:
        if (ga) reduce_into(A->grad, A->shape, g, n.shape, 1.0);
        if (gb) reduce_into(B->grad, B->shape, g, n.shape, 1.0);
        break;
      case Op::kSub:
        if (ga) reduce_into(A->grad, A->shape, g, n.shape, 1.0);
        if (gb) reduce_into(B->grad, B->shape, g, n.shape, -1.0);
        break;
      case Op::kMul: {
        const Shape s = n.shape;
        for (int r = 0; r < s.rows; ++r) {
          for (int c = 0; c < s.cols; ++c) {
            const double gv = g[static_cast<std::size_t>(r) * s.cols + c];
            const std::size_t ia = bidx(A->shape, r, c);
            const std::size_t ib = bidx(B->shape, r, c);
            if (ga) A->grad[ia] += gv * B->value[ib];
            if (gb) B->grad[ib] += gv * A->value[ia];
          }
        }
        break;
      }
      case Op::kScale:
        if (ga) {
          for (std::size_t k = 0; k < size; ++k) A->grad[k] += n.scalar * g[k];
        }
        break;
      case Op::kConcatCols: {
        int offset = 0;
        for (int id : n.inputs) {
          Node& in = nodes_[static_cast<std::size_t>(id)];
          const int w = in.shape.cols;
          if (in.requires_grad) {
            for (int r = 0; r < n.shape.rows; ++r) {
              const double* src = g + static_cast<std::size_t>(r) * n.shape.cols + offset;
              double* dst = in.grad + static_cast<std::size_t>(r) * w;
              for (int c = 0; c < w; ++c) dst[c] += src[c];
            }
          }
          offset += w;
        }
        break;
      }
      case Op::kConcatRows: {
        std::size_t offset = 0;
        for (int id : n.inputs) {
          Node& in = nodes_[static_cast<std::size_t>(id)];
          const std::size_t count = in.shape.size();
          if (in.requires_grad) {
            for (std::size_t k = 0; k < count; ++k) in.grad[k] += g[offset + k];
          }
          offset += count;
        }
        break;
      }
      case Op::kSliceCols:
        if (ga) {
          for (int r = 0; r < n.shape.rows; ++r) {
            double* dst = A->grad + static_cast<std::size_t>(r) * A->shape.cols + n.i0;
            const double* src = g + static_cast<std::size_t>(r) * n.shape.cols;
            for (int c = 0; c < n.shape.cols; ++c) dst[c] += src[c];
          }
        }
        break;
      case Op::kSliceRows:
        if (ga) {
          double* dst = A->grad + static_cast<std::size_t>(n.i0) * A->shape.cols;
          for (std::size_t k = 0; k < size; ++k) dst[k] += g[k];
        }
        break;
      case Op::kSum:
        if (ga) {
          const std::size_t m = A->shape.size();
          for (std::size_t k = 0; k < m; ++k) A->grad[k] += g[0];
        }
        break;
      case Op::kMean:
        if (ga) {
          const std::size_t m = A->shape.size();
          const double share = g[0] / static_cast<double>(m);
          for (std::size_t k = 0; k < m; ++k) A->grad[k] += share;
        }
        break;
      case Op::kSigmoid:
        for (std::size_t k = 0; k < size; ++k) A->grad[k] += g[k] * y[k] * (1.0 - y[k]);
        break;
      case Op::kTanh:
        for (std::size_t k = 0; k < size; ++k) A->grad[k] += g[k] * (1.0 - y[k] * y[k]);
        break;
      case Op::kRelu:
        for (std::size_t k = 0; k < size; ++k) {
          if (A->value[k] > 0.0) A->grad[k] += g[k];
        }
        break;
      case Op::kLeakyRelu:
        for (std::size_t k = 0; k < size; ++k) {
          A->grad[k] += A->value[k] > 0.0 ? g[k] : n.scalar * g[k];
        }
        break;
      case Op::kExp:
        for (std::size_t k = 0; k < size; ++k) A->grad[k] += g[k] * y[k];
        break;
      case Op::kLog:
        for (std::size_t k = 0; k < size; ++k) A->grad[k] += g[k] / A->value[k];
        break;
      case Op::kLogSigmoid:
        // d/dx log sigmoid(x) = sigmoid(-x) = 1 - exp(y).
        for (std::size_t k = 0; k < size; ++k) A->grad[k] += g[k] * -std::expm1(y[k]);
        break;
      case Op::kSoftmaxRows: {
        const int cols = n.shape.cols;
        for (int r = 0; r < n.shape.rows; ++r) {
          const double* yr = y + static_cast<std::size_t>(r) * cols;
          const double* gr = g + static_cast<std::size_t>(r) * cols;
          double dot = 0.0;
          for (int c = 0; c < cols; ++c) dot += yr[c] * gr[c];
          double* dst = A->grad + static_cast<std::size_t>(r) * cols;
          for (int c = 0; c < cols; ++c) dst[c] += yr[c] * (gr[c] - dot);
        }
        break;
      }
      case Op::kTranspose:
        for (int r = 0; r < n.shape.rows; ++r) {
          for (int c = 0; c < n.shape.cols; ++c) {
            A->grad[static_cast<std::size_t>(c) * n.shape.rows + r] +=
                g[static_cast<std::size_t>(r) * n.shape.cols + c];
          }
        }
        break;
      case Op::kLayerNormRows: {
        const int cols = n.shape.cols;
        for (int r = 0; r < n.shape.rows; ++r) {
          const double* yr = y + static_cast<std::size_t>(r) * cols;
          const double* gr = g + static_cast<std::size_t>(r) * cols;
          const double inv_std = n.aux[r];
          double mean_g = 0.0, mean_gy = 0.0;
          for (int c = 0; c < cols; ++c) {
            mean_g += gr[c];
            mean_gy += gr[c] * yr[c];
          }
          mean_g /= cols;
          mean_gy /= cols;
          double* dst = A->grad + static_cast<std::size_t>(r) * cols;
          for (int c = 0; c < cols; ++c) {
            dst[c] += inv_std * (gr[c] - mean_g - yr[c] * mean_gy);
          }
        }
        break;
      }
    }
  }

  for (const auto& [pid, node_id] : param_nodes_) {
    const Node& n = nodes_[static_cast<std::size_t>(node_id)];
    if (node_id > last || n.grad == nullptr) continue;
    auto& dst = out[static_cast<std::size_t>(pid)].values;
    std::copy(n.grad, n.grad + n.shape.size(), dst.begin());
  }
  return out;
}

Gradients Tape::differentiate(Var loss, std::span<const ParamId> wanted) {
  for (ParamId id : wanted) {
    if (!param_nodes_.count(id) && detached_nodes_.count(id)) {
      throw std::invalid_argument("parameter '" + (*params_)[id].name +
                                  "' is detached on this tape");
    }
  }
  Gradients all = backward(loss);
  Gradients out;
  out.reserve(wanted.size());
  for (ParamId id : wanted) out.push_back(std::move(all[static_cast<std::size_t>(id)]));
  return out;
}

// ---- primitives ------------------------------------------------------------

namespace {

using Node = Tape::Node;

Tape& same_tape(Var a, Var b) {
  if (!a.valid() || !b.valid() || a.tape() != b.tape()) {
    throw std::invalid_argument("operands live on different tapes");
  }
  return *a.tape();
}

[[noreturn]] void shape_error(const char* op, Shape a, Shape b) {
  throw std::invalid_argument(std::string(op) + ": incompatible shapes " +
                              to_string(a) + " and " + to_string(b));
}

Shape broadcast_shape(const char* op, Shape a, Shape b) {
  auto dim = [&](int x, int y) {
    if (x == y || y == 1) return x;
    if (x == 1) return y;
    shape_error(op, a, b);
  };
  return Shape{dim(a.rows, b.rows), dim(a.cols, b.cols)};
}

template <typename F>
Var binary(Op op, const char* name, Var a, Var b, F f) {
  Tape& tape = same_tape(a, b);
  const Node& na = tape.node(a.id());
  const Node& nb = tape.node(b.id());
  Node n;
  n.op = op;
  n.shape = broadcast_shape(name, na.shape, nb.shape);
  n.a = a.id();
  n.b = b.id();
  n.requires_grad = na.requires_grad || nb.requires_grad;
  n.value = tape.allocate(n.shape.size(), false);
  if (na.shape == nb.shape) {
    const std::size_t size = n.shape.size();
    for (std::size_t k = 0; k < size; ++k) n.value[k] = f(na.value[k], nb.value[k]);
  } else {
    for (int r = 0; r < n.shape.rows; ++r) {
      for (int c = 0; c < n.shape.cols; ++c) {
        n.value[static_cast<std::size_t>(r) * n.shape.cols + c] =
            f(na.value[bidx(na.shape, r, c)], nb.value[bidx(nb.shape, r, c)]);
      }
    }
  }
  return tape.push(std::move(n));
}

template <typename F>
Var unary(Op op, Var a, F f, double scalar = 0.0) {
  Tape& tape = *a.tape();
  const Node& na = tape.node(a.id());
  Node n;
  n.op = op;
  n.shape = na.shape;
  n.a = a.id();
  n.scalar = scalar;
  n.requires_grad = na.requires_grad;
  n.value = tape.allocate(n.shape.size(), false);
  const std::size_t size = n.shape.size();
  for (std::size_t k = 0; k < size; ++k) n.value[k] = f(na.value[k]);
  return tape.push(std::move(n));
}

Var concat(Op op, std::span<const Var> parts) {
  if (parts.empty()) throw std::invalid_argument("concat: no operands");
  Tape& tape = *parts[0].tape();
  Node n;
  n.op = op;
  const Shape first = tape.node(parts[0].id()).shape;
  n.shape = first;
  if (op == Op::kConcatCols) n.shape.cols = 0; else n.shape.rows = 0;
  for (Var p : parts) {
    if (p.tape() != &tape) throw std::invalid_argument("concat: operands on different tapes");
    const Node& np = tape.node(p.id());
    if (op == Op::kConcatCols) {
      if (np.shape.rows != first.rows) shape_error("concat_cols", first, np.shape);
      n.shape.cols += np.shape.cols;
    } else {
      if (np.shape.cols != first.cols) shape_error("concat_rows", first, np.shape);
      n.shape.rows += np.shape.rows;
    }
    n.requires_grad = n.requires_grad || np.requires_grad;
    n.inputs.push_back(p.id());
  }
  n.value = tape.allocate(n.shape.size(), false);
  if (op == Op::kConcatCols) {
    int offset = 0;
    for (Var p : parts) {
      const Node& np = tape.node(p.id());
      for (int r = 0; r < n.shape.rows; ++r) {
        std::copy_n(np.value + static_cast<std::size_t>(r) * np.shape.cols, np.shape.cols,
                    n.value + static_cast<std::size_t>(r) * n.shape.cols + offset);
      }
      offset += np.shape.cols;
    }
  } else {
    std::size_t offset = 0;
    for (Var p : parts) {
      const Node& np = tape.node(p.id());
      std::copy_n(np.value, np.shape.size(), n.value + offset);
      offset += np.shape.size();
    }
  }
  return tape.push(std::move(n));
}

}  // namespace

Var matmul(Var a, Var b) {
  Tape& tape = same_tape(a, b);
  const Node& na = tape.node(a.id());
  const Node& nb = tape.node(b.id());
  if (na.shape.cols != nb.shape.rows) shape_error("matmul", na.shape, nb.shape);
  Node n;
  n.op = Op::kMatMul;
  n.shape = Shape{na.shape.rows, nb.shape.cols};
  n.a = a.id();
  n.b = b.id();
  n.requires_grad = na.requires_grad || nb.requires_grad;
  n.value = tape.allocate(n.shape.size(), true);
  const int m = na.shape.rows, k = na.shape.cols, cols = nb.shape.cols;
  for (int r = 0; r < m; ++r) {
    double* out = n.value + static_cast<std::size_t>(r) * cols;
    const double* ar = na.value + static_cast<std::size_t>(r) * k;
    for (int p = 0; p < k; ++p) {
      const double av = ar[p];
      if (av == 0.0) continue;
      const double* br = nb.value + static_cast<std::size_t>(p) * cols;
      for (int c = 0; c < cols; ++c) out[c] += av * br[c];
    }
  }
  return tape.push(std::move(n));
}

Var add(Var a, Var b) {
  return binary(Op::kAdd, "add", a, b, [](double x, double y) { return x + y; });
}
Var sub(Var a, Var b) {
  return binary(Op::kSub, "sub", a, b, [](double x, double y) { return x - y; });
}
Var mul(Var a, Var b) {
  return binary(Op::kMul, "mul", a, b, [](double x, double y) { return x * y; });
}

Var scale(Var a, double s) {
  return unary(Op::kScale, a, [s](double x) { return s * x; }, s);
}

Var concat_cols(std::span<const Var> parts) { return concat(Op::kConcatCols, parts); }
Var concat_cols(std::initializer_list<Var> parts) {
  return concat(Op::kConcatCols, std::span<const Var>(parts.begin(), parts.size()));
}
Var concat_rows(std::span<const Var> parts) { return concat(Op::kConcatRows, parts); }
Var concat_rows(std::initializer_list<Var> parts) {
  return concat(Op::kConcatRows, std::span<const Var>(parts.begin(), parts.size()));
}

Var slice_cols(Var a, int start, int len) {
  Tape& tape = *a.tape();
  const Node& na = tape.node(a.id());
  if (start < 0 || len < 0 || start + len > na.shape.cols) {
    throw std::invalid_argument("slice_cols: range outside " + to_string(na.shape));
  }
  Node n;
  n.op = Op::kSliceCols;
  n.shape = Shape{na.shape.rows, len};
  n.a = a.id();
  n.i0 = start;
  n.requires_grad = na.requires_grad;
  n.value = tape.allocate(n.shape.size(), false);
  for (int r = 0; r < n.shape.rows; ++r) {
    std::copy_n(na.value + static_cast<std::size_t>(r) * na.shape.cols + start, len,
                n.value + static_cast<std::size_t>(r) * len);
  }
  return tape.push(std::move(n));
}

Var slice_rows(Var a, int start, int len) {
  Tape& tape = *a.tape();
  const Node& na = tape.node(a.id());
  if (start < 0 || len < 0 || start + len > na.shape.rows) {
    throw std::invalid_argument("slice_rows: range outside " + to_string(na.shape));
  }
  Node n;
  n.op = Op::kSliceRows;
  n.shape = Shape{len, na.shape.cols};
  n.a = a.id();
  n.i0 = start;
  n.requires_grad = na.requires_grad;
  // Rows are contiguous: alias the parent's storage.
  n.value = na.value + static_cast<std::size_t>(start) * na.shape.cols;
  return tape.push(std::move(n));
}

Var row(Var a, int r) { return slice_rows(a, r, 1); }

Var sum(Var a) {
  Tape& tape = *a.tape();
  const Node& na = tape.node(a.id());
  Node n;
  n.op = Op::kSum;
  n.shape = Shape{1, 1};
  n.a = a.id();
  n.requires_grad = na.requires_grad;
  n.value = tape.allocate(1, false);
  double acc = 0.0;
  for (std::size_t k = 0; k < na.shape.size(); ++k) acc += na.value[k];
  n.value[0] = acc;
  return tape.push(std::move(n));
}

Var mean(Var a) {
  Tape& tape = *a.tape();
  const Node& na = tape.node(a.id());
  if (na.shape.size() == 0) throw std::invalid_argument("mean of empty value");
  Node n;
  n.op = Op::kMean;
  n.shape = Shape{1, 1};
  n.a = a.id();
  n.requires_grad = na.requires_grad;
  n.value = tape.allocate(1, false);
  double acc = 0.0;
  for (std::size_t k = 0; k < na.shape.size(); ++k) acc += na.value[k];
  n.value[0] = acc / static_cast<double>(na.shape.size());
  return tape.push(std::move(n));
}

Var sigmoid(Var a) {
  return unary(Op::kSigmoid, a, [](double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
  });
}

Var tanh(Var a) {
  return unary(Op::kTanh, a, [](double x) { return std::tanh(x); });
}

Var relu(Var a) {
  return unary(Op::kRelu, a, [](double x) { return x > 0.0 ? x : 0.0; });
}

Var leaky_relu(Var a, double slope) {
  return unary(Op::kLeakyRelu, a, [slope](double x) { return x > 0.0 ? x : slope * x; },
               slope);
}

Var exp(Var a) {
  return unary(Op::kExp, a, [](double x) { return std::exp(x); });
}

Var log(Var a) {
  return unary(Op::kLog, a, [](double x) { return std::log(x); });
}

Var log_sigmoid(Var a) {
  return unary(Op::kLogSigmoid, a, [](double x) {
    // -softplus(-x)
    return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
  });
}

Var softmax_rows(Var a, Var mask) {
  Tape& tape = *a.tape();
  const Node& na = tape.node(a.id());
  const double* m = nullptr;
  if (mask.valid()) {
    const Node& nm = tape.node(mask.id());
    if (nm.shape != na.shape) shape_error("softmax_rows mask", na.shape, nm.shape);
    if (nm.requires_grad) throw std::invalid_argument("softmax mask must be constant");
    m = nm.value;
  }
  Node n;
  n.op = Op::kSoftmaxRows;
  n.shape = na.shape;
  n.a = a.id();
  n.requires_grad = na.requires_grad;
  n.value = tape.allocate(n.shape.size(), false);
  const int cols = n.shape.cols;
  for (int r = 0; r < n.shape.rows; ++r) {
    const std::size_t base = static_cast<std::size_t>(r) * cols;
    double mx = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < cols; ++c) {
      const double z = na.value[base + c] + (m ? m[base + c] : 0.0);
      n.value[base + c] = z;
      mx = std::max(mx, z);
    }
    if (!std::isfinite(mx)) {
      throw std::invalid_argument("softmax_rows: row " + std::to_string(r) +
                                  " is fully masked");
    }
    double total = 0.0;
    for (int c = 0; c < cols; ++c) {
      const double e = std::exp(n.value[base + c] - mx);
      n.value[base + c] = e;
      total += e;
    }
    for (int c = 0; c < cols; ++c) n.value[base + c] /= total;
  }
  return tape.push(std::move(n));
}

Var softmax_rows(Var a) { return softmax_rows(a, Var{}); }

Var transpose(Var a) {
  Tape& tape = *a.tape();
  const Node& na = tape.node(a.id());
  Node n;
  n.op = Op::kTranspose;
  n.shape = Shape{na.shape.cols, na.shape.rows};
  n.a = a.id();
  n.requires_grad = na.requires_grad;
  n.value = tape.allocate(n.shape.size(), false);
  for (int r = 0; r < na.shape.rows; ++r) {
    for (int c = 0; c < na.shape.cols; ++c) {
      n.value[static_cast<std::size_t>(c) * na.shape.rows + r] =
          na.value[static_cast<std::size_t>(r) * na.shape.cols + c];
    }
  }
  return tape.push(std::move(n));
}

Var layer_norm_rows(Var a, double eps) {
  Tape& tape = *a.tape();
  const Node& na = tape.node(a.id());
  Node n;
  n.op = Op::kLayerNormRows;
  n.shape = na.shape;
  n.a = a.id();
  n.scalar = eps;
  n.requires_grad = na.requires_grad;
  n.value = tape.allocate(n.shape.size(), false);
  n.aux = tape.allocate(static_cast<std::size_t>(n.shape.rows), false);
  const int cols = n.shape.cols;
  for (int r = 0; r < n.shape.rows; ++r) {
    const double* x = na.value + static_cast<std::size_t>(r) * cols;
    double mu = 0.0;
    for (int c = 0; c < cols; ++c) mu += x[c];
    mu /= cols;
    double var = 0.0;
    for (int c = 0; c < cols; ++c) var += (x[c] - mu) * (x[c] - mu);
    var /= cols;
    const double inv_std = 1.0 / std::sqrt(var + eps);
    n.aux[r] = inv_std;
    double* y = n.value + static_cast<std::size_t>(r) * cols;
    for (int c = 0; c < cols; ++c) y[c] = (x[c] - mu) * inv_std;
  }
  return tape.push(std::move(n));
}

}  // namespace damnets::ad
