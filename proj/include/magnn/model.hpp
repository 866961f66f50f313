#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "magnn/dataset.hpp"
#include "magnn/graph.hpp"

namespace magnn {

/// `identity` is accepted by the loader so that files using it can be
/// diagnosed; it has negative range and fails validation.
enum class Activation { relu, sigmoid, clamped_identity, identity };

std::string_view to_string(Activation a);
Activation parse_activation(std::string_view text);
double activate(Activation a, double x);

/// Dense row-major matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  bool operator==(const Matrix&) const = default;
};

/// One message-passing layer: v' = act(bias + self * v + sum_c colour[c] * mean_c).
struct Layer {
  Matrix self;
  std::vector<Matrix> colour;  // indexed by edge colour
  std::vector<double> bias;
  Activation activation = Activation::relu;

  std::size_t out_dim() const { return self.rows; }
  std::size_t in_dim() const { return self.cols; }

  bool operator==(const Layer&) const = default;
};

/// Mean-aggregation GNN with a step classifier. Monotone when every entry of
/// every `self` and `colour` matrix is non-negative.
struct MagnnModel {
  Signature signature;
  std::vector<Layer> layers;
  double threshold = 0.5;
  Direction direction = Direction::out;

  std::size_t depth() const { return layers.size(); }

  bool operator==(const MagnnModel&) const = default;
};

struct Diagnostic {
  enum class Kind { empty_model, dimension_mismatch, negative_weight, bad_activation, non_finite };

  Kind kind;
  std::size_t layer = 0;  // 1-based; 0 when not layer-specific
  std::string matrix;     // "A", "B:<predicate>", "b" or empty
  std::size_t row = 0;    // 1-based
  std::size_t col = 0;    // 1-based
  std::string message;
};

/// One diagnostic per violated invariant; empty iff the model is a valid
/// monotone MAGNN.
std::vector<Diagnostic> validate_model(const MagnnModel& m);

/// Throws PreconditionError when `validate_model` reports anything.
void require_monotone(const MagnnModel& m);

/// Per-layer vertex labels v_0 .. v_L, stored row-major per layer.
class LayerTrace {
 public:
  std::size_t layers() const { return values_.size(); }
  std::size_t vertices() const { return vertices_; }
  std::size_t dim(std::size_t layer) const { return dims_[layer]; }

  std::span<const double> at(std::size_t layer, VertexId v) const {
    return {values_[layer].data() + static_cast<std::size_t>(v) * dims_[layer], dims_[layer]};
  }
  std::span<const double> output(VertexId v) const { return at(values_.size() - 1, v); }

  bool operator==(const LayerTrace&) const = default;

 private:
  friend void forward(const MagnnModel& m, const ColoredGraph& g, LayerTrace& trace);

  std::size_t vertices_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<double>> values_;
};

/// Evaluates every layer on `g`. The mean over an empty neighbourhood is the
/// zero vector. Only dimensional consistency is required; non-monotone
/// models are evaluated as well.
LayerTrace forward(const MagnnModel& m, const ColoredGraph& g);

/// As above, reusing the storage of `trace`.
void forward(const MagnnModel& m, const ColoredGraph& g, LayerTrace& trace);

/// Step classifier: 1 iff x >= t.
inline int classify(double x, double t) { return x >= t ? 1 : 0; }

/// T_M(d): the unary facts U_p(a) with v^a_L[p] >= threshold.
Dataset apply(const MagnnModel& m, const Dataset& d);

/// Classified output of an already evaluated graph, as unary facts.
Dataset predicted_facts(const MagnnModel& m, const ColoredGraph& g, const LayerTrace& trace);

/// One layer over a single unary U and binary P: A = [0], B = [1], b = [0],
/// clamped identity. Predicts U(a) iff at least a `threshold` fraction of
/// a's P-neighbours satisfy U.
MagnnModel majority_model(double threshold);

/// Weight file (JSON): signature, layers (A row-major, B keyed by binary
/// predicate, b, activation), threshold, direction.
MagnnModel load_model(std::string_view json_text);
std::string save_model(const MagnnModel& m);

/// FNV-1a 64-bit hash of `save_model(m)`, as 16 hex digits.
std::string model_digest(const MagnnModel& m);

}  // namespace magnn
