#include "magnn/fuzz.hpp"

#include "magnn/error.hpp"
#include "magnn/semantics.hpp"

namespace magnn {

namespace {

// C(n + k - 1, k): multisets of size k over n unary masks.
std::uint64_t multisets(std::uint64_t n, std::uint64_t k) {
  long double acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) acc = acc * static_cast<long double>(n + k - i) / i;
  return static_cast<std::uint64_t>(acc + 0.5L);
}

bool mentioned(const ColoredGraph& g, VertexId v) {
  for (double x : g.label(v))
    if (x != 0.0) return true;
  for (std::size_t c = 0; c < g.colour_count(); ++c)
    if (!g.successors(c, v).empty() || !g.predecessors(c, v).empty()) return true;
  return false;
}

}  // namespace

std::uint64_t enumeration_size(const Signature& sig, std::size_t constants) {
  const std::size_t edge_bits = constants * constants * sig.colours();
  if (sig.dim() >= 63 || edge_bits >= 63) return std::numeric_limits<std::uint64_t>::max();
  const long double total =
      static_cast<long double>(multisets(std::uint64_t{1} << sig.dim(), constants)) *
      static_cast<long double>(std::uint64_t{1} << edge_bits);
  if (total >= 1.8e19L) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(total);
}

void for_each_dataset(const Signature& sig, std::size_t constants, std::uint64_t limit,
                      const std::function<void(const ColoredGraph&)>& visit) {
  const std::uint64_t size = enumeration_size(sig, constants);
  if (size > limit)
    throw BoundExceeded("exhaustive enumeration of " + std::to_string(size) +
                            " datasets exceeds the limit of " + std::to_string(limit),
                        size);
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= constants; ++i) names.push_back("c" + std::to_string(i));
  ColoredGraph g(names, sig.dim(), sig.colours());
  const std::size_t k = constants;
  const std::size_t edge_bits = k * k * sig.colours();
  const std::uint64_t top_mask = (std::uint64_t{1} << sig.dim()) - 1;

  for (std::uint64_t edges = 0; edges < (std::uint64_t{1} << edge_bits); ++edges) {
    g.clear_structure();
    for (std::size_t bit = 0; bit < edge_bits; ++bit) {
      if (!(edges >> bit & 1)) continue;
      const std::size_t c = bit / (k * k);
      const std::size_t rest = bit % (k * k);
      g.add_edge(c, static_cast<VertexId>(rest / k), static_cast<VertexId>(rest % k));
    }
    // Unary masks non-increasing along the vertices: one representative per
    // permutation orbit of the labels.
    std::vector<std::uint64_t> masks(k, top_mask);
    while (true) {
      for (std::size_t v = 0; v < k; ++v)
        for (std::size_t p = 0; p < sig.dim(); ++p)
          g.set_label(static_cast<VertexId>(v), p, (masks[v] >> p & 1) ? 1.0 : 0.0);
      visit(g);
      std::size_t pos = k;
      while (pos > 0 && masks[pos - 1] == 0) --pos;
      if (pos == 0) break;
      --masks[pos - 1];
      for (std::size_t j = pos; j < k; ++j) masks[j] = masks[pos - 1];
    }
  }
}

Dataset graph_dataset(const ColoredGraph& g, const Signature& sig) { return decode(g, sig); }

std::vector<BruteForceVerdict> brute_force_soundness(const MagnnModel& m, std::span<const Rule> rules,
                                                     const ExhaustiveOptions& opts) {
  const Signature& sig = m.signature;
  const std::size_t k = opts.max_constants;
  std::vector<BruteForceVerdict> verdicts(rules.size());
  std::vector<ConceptEvaluator> evals;
  std::vector<std::size_t> heads;
  for (const auto& r : rules) {
    heads.push_back(head_index(r, sig));
    evals.emplace_back(r.body, sig);
  }
  if (rules.empty() || k == 0) return verdicts;

  // Rules grouped by (head, vertex profile) where the profile is the unary
  // mask and the in/out degree per colour; each rule appears only under the
  // profiles its root filter admits.
  const std::size_t dim = sig.dim();
  const std::size_t cols = sig.colours();
  std::uint64_t profiles = std::uint64_t{1} << std::min<std::size_t>(dim, 40);
  for (std::size_t c = 0; c < 2 * cols; ++c) profiles *= (k + 1);
  const bool bucketed = dim < 20 && profiles <= (std::uint64_t{1} << 18);

  auto profile_of = [&](const ColoredGraph& g, VertexId v) {
    std::uint64_t idx = 0;
    for (std::size_t c = 0; c < cols; ++c) {
      idx = idx * (k + 1) + g.successors(c, v).size();
      idx = idx * (k + 1) + g.predecessors(c, v).size();
    }
    std::uint64_t mask = 0;
    auto label = g.label(v);
    for (std::size_t p = 0; p < dim; ++p)
      if (label[p] != 0.0) mask |= std::uint64_t{1} << p;
    return (idx << dim) | mask;
  };

  std::vector<std::vector<std::uint32_t>> buckets;  // [head * profiles + profile]
  std::vector<std::vector<std::uint32_t>> by_head(dim);
  for (std::uint32_t i = 0; i < rules.size(); ++i) by_head[heads[i]].push_back(i);
  if (bucketed) {
    buckets.resize(dim * profiles);
    std::vector<int> out_deg(cols), in_deg(cols);
    for (std::uint64_t prof = 0; prof < profiles; ++prof) {
      const std::uint64_t mask = prof & ((std::uint64_t{1} << dim) - 1);
      std::uint64_t rest = prof >> dim;
      for (std::size_t c = cols; c-- > 0;) {
        in_deg[c] = static_cast<int>(rest % (k + 1));
        rest /= k + 1;
        out_deg[c] = static_cast<int>(rest % (k + 1));
        rest /= k + 1;
      }
      for (std::uint32_t i = 0; i < rules.size(); ++i) {
        const auto& f = evals[i].root_filter();
        if ((f.required_unary & mask) != f.required_unary) continue;
        bool ok = true;
        for (std::size_t c = 0; c < cols && ok; ++c)
          ok = out_deg[c] >= f.min_out[c] && out_deg[c] <= f.max_out[c] && in_deg[c] >= f.min_in[c] &&
               in_deg[c] <= f.max_in[c];
        if (ok) buckets[heads[i] * profiles + prof].push_back(i);
      }
    }
  }

  std::size_t open = rules.size();
  LayerTrace trace;
  auto visit = [&](const ColoredGraph& g) {
    if (open == 0) return;
    forward(m, g, trace);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (!mentioned(g, v)) continue;
      auto out = trace.output(v);
      const std::uint64_t prof = bucketed ? profile_of(g, v) : 0;
      for (std::size_t h = 0; h < dim; ++h) {
        if (classify(out[h], m.threshold)) continue;
        auto& list = bucketed ? buckets[h * profiles + prof] : by_head[h];
        for (std::size_t j = 0; j < list.size();) {
          const auto i = list[j];
          if (!verdicts[i].sound) {  // already refuted
            list[j] = list.back();
            list.pop_back();
            continue;
          }
          if ((bucketed || evals[i].may_hold(g, v)) && evals[i].holds(g, v)) {
            verdicts[i].sound = false;
            verdicts[i].counterexample = graph_dataset(g, sig);
            verdicts[i].fact = Fact::unary(rules[i].head, g.constant(v));
            --open;
          }
          ++j;
        }
      }
    }
  };
  for_each_dataset(sig, k, opts.limit, visit);
  return verdicts;
}

BruteForceVerdict brute_force_soundness(const MagnnModel& m, const Rule& r, const ExhaustiveOptions& opts) {
  return brute_force_soundness(m, std::span<const Rule>(&r, 1), opts).front();
}

}  // namespace magnn
