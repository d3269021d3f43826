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

#ifndef DAMNETS_AUTODIFF_H_
#define DAMNETS_AUTODIFF_H_

// Minimal reverse-mode differentiation over dense row-major matrices.
//
// A Tape records every primitive as it is evaluated; backward() replays the
// record in reverse. Vectors are 1 x n matrices and scalars are 1 x 1. All
// arithmetic is double precision. A tape has a single owner; independent
// tapes may run on different threads against the same ParameterStore as
// long as nobody mutates the store meanwhile.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace damnets::ad {

struct Shape {
  int rows = 0;
  int cols = 0;

  std::size_t size() const {
    return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  }
  friend bool operator==(const Shape&, const Shape&) = default;
};

std::string to_string(Shape s);

// Dense values plus shape; the storage type for parameters and gradients.
struct Tensor {
  Shape shape;
  std::vector<double> values;

  Tensor() = default;
  explicit Tensor(Shape s, double fill = 0.0) : shape(s), values(s.size(), fill) {}
  Tensor(Shape s, std::vector<double> v);

  double& at(int r, int c) { return values[static_cast<std::size_t>(r) * shape.cols + c]; }
  double at(int r, int c) const {
    return values[static_cast<std::size_t>(r) * shape.cols + c];
  }
};

using ParamId = int;

// Type-erased uniform source so that the store does not depend on Rng.
class Uniform01 {
 public:
  virtual ~Uniform01() = default;
  virtual double operator()() = 0;
};

struct Parameter {
  std::string name;
  Tensor tensor;
  bool trainable = true;
};

// Owns every named trainable array of a model. Ids are dense indices in
// registration order, which is also the checkpoint manifest order.
class ParameterStore {
 public:
  ParamId add(std::string name, Shape shape, double fill = 0.0);
  // uniform(-bound, bound) with bound = 1/sqrt(fan_in).
  ParamId add_uniform(std::string name, Shape shape, int fan_in, Uniform01& rng);

  std::size_t size() const { return params_.size(); }
  Parameter& operator[](ParamId id) { return params_.at(static_cast<std::size_t>(id)); }
  const Parameter& operator[](ParamId id) const {
    return params_.at(static_cast<std::size_t>(id));
  }
  // -1 when absent.
  ParamId find(const std::string& name) const;
  std::size_t num_scalars() const;

  const std::vector<Parameter>& all() const { return params_; }

 private:
  std::vector<Parameter> params_;
  std::unordered_map<std::string, ParamId> by_name_;
};

// Gradient per ParamId; untouched parameters have all-zero entries.
using Gradients = std::vector<Tensor>;

Gradients zero_gradients(const ParameterStore& store);
// dst += src, entrywise.
void accumulate(Gradients& dst, const Gradients& src, double scale = 1.0);

class Tape;

// Handle to a value recorded on a tape. Cheap to copy; valid while the tape
// lives.
class Var {
 public:
  Var() = default;

  bool valid() const { return tape_ != nullptr; }
  Tape* tape() const { return tape_; }
  int id() const { return id_; }

  Shape shape() const;
  int rows() const { return shape().rows; }
  int cols() const { return shape().cols; }
  std::span<const double> value() const;
  double item() const;  // value of a 1 x 1 Var
  double at(int r, int c) const;

 private:
  friend class Tape;
  Var(Tape* tape, int id) : tape_(tape), id_(id) {}
  Tape* tape_ = nullptr;
  int id_ = -1;
};

enum class Op : uint8_t {
  kLeaf,
  kMatMul,
  kAdd,
  kSub,
  kMul,
  kScale,
  kConcatCols,
  kConcatRows,
  kSliceCols,
  kSliceRows,
  kSum,
  kMean,
  kSigmoid,
  kTanh,
  kRelu,
  kLeakyRelu,
  kExp,
  kLog,
  kLogSigmoid,
  kSoftmaxRows,
  kTranspose,
  kLayerNormRows,
};

class Tape {
 public:
  explicit Tape(const ParameterStore* params = nullptr);
  ~Tape();
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  const ParameterStore* params() const { return params_; }

  // Leaves.
  Var constant(Shape shape, std::span<const double> values);
  Var constant(Shape shape, double fill);
  Var zeros(Shape shape) { return constant(shape, 0.0); }
  // Differentiable leaf not backed by a parameter (gradient checks).
  Var input(Shape shape, std::span<const double> values);
  // Parameter leaf; repeated calls with the same id return the same Var. The
  // value aliases the store, which must outlive the tape.
  Var param(ParamId id);
  // Parameter value without gradient flow.
  Var param_detached(ParamId id);

  // Reverse sweep from a 1 x 1 loss. Returns d loss / d parameter for every
  // parameter of the attached store; gradients of input() leaves are
  // available through grad() afterwards. May be called once per tape.
  Gradients backward(Var loss);
  std::span<const double> grad(Var v) const;

  // Gradients restricted to `wanted`; throws if one of them was only
  // recorded detached on this tape.
  Gradients differentiate(Var loss, std::span<const ParamId> wanted);

  std::size_t num_nodes() const { return nodes_.size(); }

  // --- used by the primitive ops in autodiff.cc ---
  struct Node {
    Op op = Op::kLeaf;
    Shape shape;
    bool requires_grad = false;
    int a = -1;
    int b = -1;
    int i0 = 0;  // slice start / param id
    double scalar = 0.0;
    double* value = nullptr;
    double* grad = nullptr;
    double* aux = nullptr;
    std::vector<int> inputs;  // concat operands
  };

  const Node& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  Node& node(int id) { return nodes_[static_cast<std::size_t>(id)]; }
  Var push(Node n);
  double* allocate(std::size_t count, bool zero);

 private:
  class Arena;

  const ParameterStore* params_;
  std::vector<Node> nodes_;
  std::unique_ptr<Arena> values_;
  std::unique_ptr<Arena> grads_;
  std::unordered_map<ParamId, int> param_nodes_;
  std::unordered_map<ParamId, int> detached_nodes_;
  bool backward_done_ = false;
};

// ---- primitives ----------------------------------------------------------
// Binary elementwise ops broadcast b over a: b may have a's shape, one row,
// one column or be 1 x 1; a may likewise be a column or row broadcast
// against b (result shape is the per-dimension maximum).

Var matmul(Var a, Var b);
Var add(Var a, Var b);
Var sub(Var a, Var b);
Var mul(Var a, Var b);
Var scale(Var a, double s);
Var concat_cols(std::span<const Var> parts);
Var concat_cols(std::initializer_list<Var> parts);
Var concat_rows(std::span<const Var> parts);
Var concat_rows(std::initializer_list<Var> parts);
Var slice_cols(Var a, int start, int len);
Var slice_rows(Var a, int start, int len);
Var row(Var a, int r);
Var sum(Var a);
Var mean(Var a);
Var sigmoid(Var a);
Var tanh(Var a);
Var relu(Var a);
Var leaky_relu(Var a, double slope);
Var exp(Var a);
Var log(Var a);
// log(sigmoid(a)), evaluated stably.
Var log_sigmoid(Var a);
// Row-wise softmax of a + mask. The mask is a constant additive term
// (same shape as a) whose blocked entries are -infinity; such entries get
// probability exactly 0. A fully blocked row is an error.
Var softmax_rows(Var a, Var mask);
Var softmax_rows(Var a);
Var transpose(Var a);
// Per-row standardisation (x - mean) / sqrt(var + eps), no affine part.
Var layer_norm_rows(Var a, double eps = 1e-5);

}  // namespace damnets::ad

#endif  // DAMNETS_AUTODIFF_H_
