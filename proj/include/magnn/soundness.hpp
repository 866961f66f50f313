#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "magnn/concept.hpp"
#include "magnn/dataset.hpp"
#include "magnn/model.hpp"
#include "magnn/rules.hpp"

namespace magnn {

/// A dataset together with the constant at which a rule body holds.
struct AnchoredDataset {
  Dataset data;
  std::string anchor;
};

/// The datasets whose model output decides soundness of `r`. Non-empty body:
/// the single dataset {A_i(a), P_j(a,b)}. Empty body: {P(b,a)} for the first
/// binary predicate ({P(a,b)} when aggregating over incoming edges), or, if
/// the signature has no binary predicate, one dataset {A'(a)} per unary A'.
std::vector<AnchoredDataset> base_datasets(const RestrictedRule& r, const Signature& sig,
                                           Direction dir = Direction::out);

/// The first entry of `base_datasets`.
AnchoredDataset base_dataset(const RestrictedRule& r, const Signature& sig,
                             Direction dir = Direction::out);

struct SoundnessVerdict {
  bool sound = false;
  std::optional<AnchoredDataset> witness;  // present iff unsound
  RestrictedRule rule;
};

/// Decides soundness of a restricted rule for a monotone model from the
/// model's output on the base datasets alone.
SoundnessVerdict check_restricted(const MagnnModel& m, const RestrictedRule& r);

struct EnumerateOptions {
  bool prune = true;
  unsigned jobs = 1;
};

struct ExtractionReport {
  std::vector<RestrictedRule> minimal_sound;  // enumeration order
  std::size_t subsumed_sound = 0;
  std::size_t candidates_visited = 0;
  std::size_t candidates_checked = 0;  // verdicts obtained from the model
  std::map<std::size_t, std::size_t> per_body_size;
  std::size_t max_body_size = 0;
  std::optional<std::string> warning;
};

/// Every restricted rule with a body of at most `max_body_size` atoms, by
/// body size, then head, unary set and exist set. With pruning, a candidate
/// subsumed by an already found sound rule of the same head is counted as
/// sound without consulting the model. Sizes beyond dim + colours are
/// clamped and reported in `warning`.
ExtractionReport enumerate_sound(const MagnnModel& m, std::size_t max_body_size,
                                 const EnumerateOptions& opts = {});

/// Every restricted rule over the signature with body size <= max, in
/// enumeration order.
std::vector<RestrictedRule> all_restricted_rules(const Signature& sig, std::size_t max_body_size);

/// Outer disjunctive form, then each EXISTS / ATLEAST conjunct replaced by
/// EXISTS P.TOP. Throws FragmentViolation for non-ELUQ bodies.
std::vector<RestrictedRule> reduce_eluq(const Rule& r);

struct EluqVerdict {
  bool sound = false;
  Rule rule;
  std::vector<SoundnessVerdict> parts;  // one per element of reduce_eluq(rule)
};

/// Sound iff every rule of the reduction is sound.
EluqVerdict check_eluq(const MagnnModel& m, const Rule& r);

}  // namespace magnn
