#include "magnn/graph.hpp"

#include <algorithm>
#include <map>

#include "magnn/error.hpp"

namespace magnn {

ColoredGraph::ColoredGraph(std::vector<std::string> constants, std::size_t dim,
                           std::size_t colours)
    : constants_(std::move(constants)),
      dim_(dim),
      colours_(colours),
      sorted_(std::is_sorted(constants_.begin(), constants_.end())),
      labels_(constants_.size() * dim, 0.0),
      out_(constants_.size() * colours),
      in_(constants_.size() * colours) {}

std::optional<VertexId> ColoredGraph::vertex_of(std::string_view constant) const {
  if (sorted_) {
    auto it = std::lower_bound(constants_.begin(), constants_.end(), constant);
    if (it != constants_.end() && *it == constant)
      return static_cast<VertexId>(it - constants_.begin());
    return std::nullopt;
  }
  auto it = std::find(constants_.begin(), constants_.end(), constant);
  if (it == constants_.end()) return std::nullopt;
  return static_cast<VertexId>(it - constants_.begin());
}

void ColoredGraph::add_edge(std::size_t colour, VertexId from, VertexId to) {
  auto insert_sorted = [](std::vector<VertexId>& list, VertexId v) {
    auto it = std::lower_bound(list.begin(), list.end(), v);
    if (it == list.end() || *it != v) list.insert(it, v);
  };
  insert_sorted(out_[colour * constants_.size() + from], to);
  insert_sorted(in_[colour * constants_.size() + to], from);
}

bool ColoredGraph::has_edge(std::size_t colour, VertexId from, VertexId to) const {
  auto succ = successors(colour, from);
  return std::binary_search(succ.begin(), succ.end(), to);
}

std::size_t ColoredGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& list : out_) total += list.size();
  return total;
}

void ColoredGraph::clear_structure() {
  std::fill(labels_.begin(), labels_.end(), 0.0);
  for (auto& list : out_) list.clear();
  for (auto& list : in_) list.clear();
}

bool ColoredGraph::is_boolean() const {
  return std::all_of(labels_.begin(), labels_.end(), [](double x) { return x == 0.0 || x == 1.0; });
}

ColoredGraph encode(const Dataset& d, const Signature& sig) {
  d.check_signature(sig);
  auto names = d.constants();
  std::map<std::string_view, VertexId> index;
  for (const auto& c : names) index.emplace(c, static_cast<VertexId>(index.size()));
  ColoredGraph g(std::vector<std::string>(names.begin(), names.end()), sig.dim(), sig.colours());
  for (const auto& f : d) {
    VertexId a = index.at(f.first);
    if (f.is_binary())
      g.add_edge(*sig.binary_index(f.predicate), a, index.at(f.second));
    else
      g.set_label(a, *sig.unary_index(f.predicate), 1.0);
  }
  return g;
}

Dataset decode(const ColoredGraph& g, const Signature& sig) {
  if (g.dim() != sig.dim() || g.colour_count() != sig.colours())
    throw SignatureMismatch("graph dimensions do not match the signature");
  Dataset d;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    auto label = g.label(v);
    for (std::size_t p = 0; p < label.size(); ++p) {
      if (label[p] == 1.0)
        d.insert(Fact::unary(sig.unary()[p], g.constant(v)));
      else if (label[p] != 0.0)
        throw InvalidGraph("vertex " + std::to_string(v) + " ('" + g.constant(v) +
                           "') has non-Boolean label component " + std::to_string(p) + " = " +
                           std::to_string(label[p]));
    }
    for (std::size_t c = 0; c < g.colour_count(); ++c)
      for (VertexId w : g.successors(c, v))
        d.insert(Fact::binary(sig.binary()[c], g.constant(v), g.constant(w)));
  }
  return d;
}

}  // namespace magnn
