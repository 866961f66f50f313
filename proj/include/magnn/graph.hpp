#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "magnn/dataset.hpp"

namespace magnn {

using VertexId = std::uint32_t;

/// A (Col, delta)-graph: vertices bound to constants, one directed edge set
/// per colour, and a real label vector of dimension `dim` per vertex.
class ColoredGraph {
 public:
  ColoredGraph() = default;
  /// Vertices are bound to `constants` in the given order; names must be unique.
  ColoredGraph(std::vector<std::string> constants, std::size_t dim, std::size_t colours);

  std::size_t vertex_count() const { return constants_.size(); }
  std::size_t dim() const { return dim_; }
  std::size_t colour_count() const { return colours_; }

  const std::string& constant(VertexId v) const { return constants_[v]; }
  const std::vector<std::string>& constants() const { return constants_; }
  std::optional<VertexId> vertex_of(std::string_view constant) const;

  std::span<const double> label(VertexId v) const {
    return {labels_.data() + static_cast<std::size_t>(v) * dim_, dim_};
  }
  void set_label(VertexId v, std::size_t component, double value) {
    labels_[static_cast<std::size_t>(v) * dim_ + component] = value;
  }

  /// Idempotent: edge sets have set semantics.
  void add_edge(std::size_t colour, VertexId from, VertexId to);
  bool has_edge(std::size_t colour, VertexId from, VertexId to) const;
  std::size_t edge_count() const;

  std::span<const VertexId> successors(std::size_t colour, VertexId v) const {
    return out_[colour * constants_.size() + v];
  }
  std::span<const VertexId> predecessors(std::size_t colour, VertexId v) const {
    return in_[colour * constants_.size() + v];
  }
  std::span<const VertexId> neighbours(std::size_t colour, VertexId v, Direction dir) const {
    return dir == Direction::out ? successors(colour, v) : predecessors(colour, v);
  }

  /// Zeroes every label and removes every edge, keeping vertices and the
  /// allocated capacity.
  void clear_structure();

  bool is_boolean() const;

 private:
  std::vector<std::string> constants_;
  std::size_t dim_ = 0;
  std::size_t colours_ = 0;
  bool sorted_ = true;
  std::vector<double> labels_;
  std::vector<std::vector<VertexId>> out_;  // [colour * n + v], sorted
  std::vector<std::vector<VertexId>> in_;   // [colour * n + v], sorted
};

/// Canonical encoding: one vertex per constant (lexicographic order), a
/// c-coloured edge per binary fact, label component p set to 1 iff U_p(a).
ColoredGraph encode(const Dataset& d, const Signature& sig);

/// Inverse of `encode`; throws InvalidGraph for a non-Boolean label.
Dataset decode(const ColoredGraph& g, const Signature& sig);

}  // namespace magnn
