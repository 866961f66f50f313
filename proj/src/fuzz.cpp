#include "magnn/fuzz.hpp"

#include <algorithm>
#include <mutex>
#include <thread>

#include "magnn/error.hpp"
#include "magnn/semantics.hpp"

namespace magnn {

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t uniform_int(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + rng() % (hi - lo + 1);
}

namespace {

void add_random_facts(const Signature& sig, const std::vector<std::string>& cons, double density,
                      std::mt19937_64& rng, Dataset& out) {
  for (const auto& u : sig.unary())
    for (const auto& c : cons)
      if (unit_uniform(rng) < density) out.insert(Fact::unary(u, c));
  for (const auto& p : sig.binary())
    for (const auto& x : cons)
      for (const auto& y : cons)
        if (unit_uniform(rng) < density) out.insert(Fact::binary(p, x, y));
}

}  // namespace

Dataset random_dataset(const Signature& sig, std::size_t max_constants, double density,
                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto k = uniform_int(rng, 1, std::max<std::size_t>(max_constants, 1));
  std::vector<std::string> cons;
  for (std::uint64_t i = 1; i <= k; ++i) cons.push_back("c" + std::to_string(i));
  Dataset out;
  add_random_facts(sig, cons, density, rng, out);
  return out;
}

MagnnModel random_model(const Signature& sig, std::size_t layers, std::size_t hidden_dim,
                        std::uint64_t seed, bool monotone) {
  if (layers == 0) throw PreconditionError("a model needs at least one layer");
  std::mt19937_64 rng(seed);
  auto weight = [&] { return monotone ? unit_uniform(rng) : 2.0 * unit_uniform(rng) - 1.0; };
  MagnnModel m;
  m.signature = sig;
  std::size_t in = sig.dim();
  for (std::size_t l = 0; l < layers; ++l) {
    const std::size_t out = l + 1 == layers ? sig.dim() : hidden_dim;
    Layer layer;
    layer.self = Matrix(out, in);
    for (auto& x : layer.self.data) x = weight();
    for (std::size_t c = 0; c < sig.colours(); ++c) {
      Matrix b(out, in);
      for (auto& x : b.data) x = weight();
      layer.colour.push_back(std::move(b));
    }
    const double fan_in = static_cast<double>(in * (1 + sig.colours()));
    // Tuned so that random models admit a mix of sound and unsound rules.
    const double scale = l + 1 < layers ? 0.2 : layers == 1 ? 0.5 : 0.15;
    for (std::size_t r = 0; r < out; ++r) layer.bias.push_back(-scale * fan_in * unit_uniform(rng));
    layer.activation = l + 1 == layers ? Activation::sigmoid : Activation::relu;
    m.layers.push_back(std::move(layer));
    in = out;
  }
  if (!monotone) m.layers.front().self(0, 0) = -0.5 - 0.5 * unit_uniform(rng);
  do m.threshold = unit_uniform(rng);
  while (m.threshold == 0.0);
  return m;
}

Concept random_eluq(const Signature& sig, std::mt19937_64& rng, int depth) {
  const bool roles = depth > 0 && sig.colours() > 0;
  const auto pick = uniform_int(rng, 0, roles ? 9 : 5);
  // Mean branching below one keeps the expected size finite.
  auto atom = [&] { return Concept::atomic(sig.unary()[uniform_int(rng, 0, sig.dim() - 1)]); };
  auto role = [&] { return Role{sig.binary()[uniform_int(rng, 0, sig.colours() - 1)], false}; };
  switch (pick) {
    case 0: return Concept::top();
    case 1:
    case 2:
    case 3: return atom();
    case 4: return Concept::conjunction({random_eluq(sig, rng, depth), random_eluq(sig, rng, depth)});
    case 5: return Concept::disjunction({random_eluq(sig, rng, depth), random_eluq(sig, rng, depth)});
    case 6:
    case 7: return Concept::exists(role(), random_eluq(sig, rng, depth - 1));
    default: {
      auto r = role();
      return Concept::at_least(static_cast<int>(uniform_int(rng, 1, 3)), r, random_eluq(sig, rng, depth - 1));
    }
  }
}

Rule random_eluq_rule(const Signature& sig, std::uint64_t seed, int depth) {
  std::mt19937_64 rng(seed);
  Concept body = random_eluq(sig, rng, depth);
  return Rule{body, sig.unary()[uniform_int(rng, 0, sig.dim() - 1)]};
}

std::vector<Fact> violations(const MagnnModel& m, const Rule& r, const Dataset& d) {
  Dataset derived = immediate_consequences(r, d, m.signature);
  Dataset predicted = apply(m, d);
  std::vector<Fact> out;
  for (const auto& f : derived)
    if (!predicted.contains(f)) out.push_back(f);
  return out;
}

Dataset fuzz_dataset(const Signature& sig, const FuzzOptions& opts, std::size_t trial) {
  const auto seed = trial_seed(opts.seed, trial);
  if (opts.seeds.empty() || trial % 2 == 0) return random_dataset(sig, opts.max_constants, opts.density, seed);
  std::mt19937_64 rng(seed);
  Dataset out = opts.seeds[uniform_int(rng, 0, opts.seeds.size() - 1)];
  auto known = out.constants();
  std::vector<std::string> cons(known.begin(), known.end());
  for (std::uint64_t i = 0, n = uniform_int(rng, 0, 2); i < n; ++i) cons.push_back("n" + std::to_string(i + 1));
  add_random_facts(sig, cons, opts.density * unit_uniform(rng), rng, out);
  return out;
}

std::vector<FuzzReport> fuzz_soundness(const MagnnModel& m, std::span<const Rule> rules,
                                       const FuzzOptions& opts) {
  const Signature& sig = m.signature;
  std::vector<ConceptEvaluator> evals;
  std::vector<std::size_t> heads;
  for (const auto& r : rules) {
    heads.push_back(head_index(r, sig));
    evals.emplace_back(r.body, sig);
  }

  std::vector<FuzzReport> reports(rules.size());
  const std::string digest = model_digest(m);
  for (std::size_t i = 0; i < rules.size(); ++i) {
    reports[i].trials = opts.trials;
    reports[i].seed = opts.seed;
    reports[i].rule = to_text(rules[i]);
    reports[i].model_digest = digest;
  }

  std::mutex lock;
  auto worker = [&](std::size_t first, std::size_t stride) {
    std::vector<std::size_t> firings(rules.size(), 0);
    std::vector<std::vector<Violation>> found(rules.size());
    std::vector<std::size_t> counts(rules.size(), 0);
    LayerTrace trace;
    for (std::size_t t = first; t < opts.trials; t += stride) {
      Dataset d = fuzz_dataset(sig, opts, t);
      ColoredGraph g = encode(d, sig);
      forward(m, g, trace);
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        auto out = trace.output(v);
        for (std::size_t i = 0; i < rules.size(); ++i) {
          if (!evals[i].may_hold(g, v) || !evals[i].holds(g, v)) continue;
          ++firings[i];
          if (classify(out[heads[i]], m.threshold)) continue;
          ++counts[i];
          if (found[i].size() < opts.keep)
            found[i].push_back(Violation{t, d, Fact::unary(rules[i].head, g.constant(v))});
        }
      }
    }
    std::lock_guard<std::mutex> guard(lock);
    for (std::size_t i = 0; i < rules.size(); ++i) {
      reports[i].body_firings += firings[i];
      reports[i].violation_count += counts[i];
      for (auto& v : found[i]) reports[i].violations.push_back(std::move(v));
    }
  };

  const unsigned jobs = std::max(1u, opts.jobs);
  if (jobs == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker, j, jobs);
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < rules.size(); ++i) {
    auto& vs = reports[i].violations;
    std::stable_sort(vs.begin(), vs.end(), [](const Violation& a, const Violation& b) {
      if (a.trial != b.trial) return a.trial < b.trial;
      return a.fact < b.fact;
    });
    if (vs.size() > opts.keep) vs.resize(opts.keep);
    if (opts.shrink) {
      for (auto& v : vs) {
        v.dataset = shrink_counterexample(m, rules[i], v.dataset);
        auto remaining = violations(m, rules[i], v.dataset);
        v.fact = remaining.front();
      }
    }
  }
  return reports;
}

FuzzReport fuzz_soundness(const MagnnModel& m, const Rule& r, const FuzzOptions& opts) {
  return fuzz_soundness(m, std::span<const Rule>(&r, 1), opts).front();
}

Dataset shrink_counterexample(const MagnnModel& m, const Rule& r, const Dataset& d) {
  auto violates = [&](const Dataset& x) { return !violations(m, r, x).empty(); };
  if (!violates(d)) throw PreconditionError("dataset is not a counterexample for the rule");
  Dataset current = d;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& f : current) {
      Dataset next = current;
      next.erase(f);
      if (violates(next)) {
        current = std::move(next);
        changed = true;
        break;
      }
    }
    if (changed) continue;
    auto cons = current.constants();
    std::vector<std::string> list(cons.begin(), cons.end());
    for (std::size_t i = 0; i < list.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < list.size() && !changed; ++j) {
        Dataset next = current.renamed({{list[j], list[i]}});
        if (violates(next)) {
          current = std::move(next);
          changed = true;
        }
      }
  }
  return current;
}

}  // namespace magnn
