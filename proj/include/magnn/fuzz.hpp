#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "magnn/concept.hpp"
#include "magnn/dataset.hpp"
#include "magnn/graph.hpp"
#include "magnn/model.hpp"

namespace magnn {

/// splitmix64 of (seed, index); trials seeded this way are order independent.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform double in [0, 1) from the top 53 bits.
double unit_uniform(std::mt19937_64& rng);
/// Uniform integer in [lo, hi].
std::uint64_t uniform_int(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi);

/// Pool c1..ck with k uniform in [1, max_constants]; every unary fact and
/// every ordered binary fact (self-loops included) kept with probability
/// `density`.
Dataset random_dataset(const Signature& sig, std::size_t max_constants, double density,
                       std::uint64_t seed);

/// Layers of width `hidden_dim` between input and output of width dim.
/// Weights uniform in [0,1] (monotone) or [-1,1]; biases uniform in
/// [-s * fan_in, 0] with s depending on depth; relu inner layers, sigmoid
/// last; threshold in (0,1).
MagnnModel random_model(const Signature& sig, std::size_t layers, std::size_t hidden_dim,
                        std::uint64_t seed, bool monotone = true);

/// Random ELUQ concept with role nesting at most `depth`.
Concept random_eluq(const Signature& sig, std::mt19937_64& rng, int depth);
Rule random_eluq_rule(const Signature& sig, std::uint64_t seed, int depth = 2);

/// Facts of T_r(d) missing from T_M(d).
std::vector<Fact> violations(const MagnnModel& m, const Rule& r, const Dataset& d);

struct FuzzOptions {
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::size_t max_constants = 6;
  double density = 0.3;
  unsigned jobs = 1;
  bool shrink = true;
  std::size_t keep = 8;  // violations recorded per rule
  /// When non-empty, odd trials extend a randomly chosen seed dataset with
  /// random facts over its constants and fresh ones.
  std::vector<Dataset> seeds;
};

struct Violation {
  std::size_t trial = 0;
  Dataset dataset;
  Fact fact;
};

struct FuzzReport {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::string rule;
  std::string model_digest;
  std::size_t body_firings = 0;   // (dataset, constant) pairs where the body held
  std::size_t violation_count = 0;
  std::vector<Violation> violations;  // first `keep`, by trial index

  bool vacuous() const { return body_firings == 0; }
};

/// The trial dataset of index `trial`.
Dataset fuzz_dataset(const Signature& sig, const FuzzOptions& opts, std::size_t trial);

FuzzReport fuzz_soundness(const MagnnModel& m, const Rule& r, const FuzzOptions& opts = {});

/// One report per rule; every trial dataset is evaluated by the model once.
std::vector<FuzzReport> fuzz_soundness(const MagnnModel& m, std::span<const Rule> rules,
                                       const FuzzOptions& opts = {});

/// Greedy fact removals and constant merges while some violation persists.
/// Throws PreconditionError when `d` is not a violation.
Dataset shrink_counterexample(const MagnnModel& m, const Rule& r, const Dataset& d);

struct ExhaustiveOptions {
  std::size_t max_constants = 3;
  std::uint64_t limit = std::uint64_t{1} << 27;  // datasets enumerated, after symmetry reduction
};

struct BruteForceVerdict {
  bool sound = true;
  std::optional<Dataset> counterexample;
  std::optional<Fact> fact;
};

/// Number of datasets `for_each_dataset` visits.
std::uint64_t enumeration_size(const Signature& sig, std::size_t constants);

/// Every dataset over constants c1..ck up to renaming, as encoded graphs with
/// exactly k vertices; vertices without facts are isolated and irrelevant to
/// both T_M and T_r on the mentioned constants. Throws BoundExceeded above
/// `limit`.
void for_each_dataset(const Signature& sig, std::size_t constants, std::uint64_t limit,
                      const std::function<void(const ColoredGraph&)>& visit);

/// Decodes an enumerated graph, dropping nothing (isolated vertices carry no
/// facts).
Dataset graph_dataset(const ColoredGraph& g, const Signature& sig);

/// Soundness of many rules checked against every dataset with at most
/// `max_constants` constants; the model runs once per dataset.
std::vector<BruteForceVerdict> brute_force_soundness(const MagnnModel& m, std::span<const Rule> rules,
                                                     const ExhaustiveOptions& opts = {});

BruteForceVerdict brute_force_soundness(const MagnnModel& m, const Rule& r,
                                        const ExhaustiveOptions& opts = {});

}  // namespace magnn
