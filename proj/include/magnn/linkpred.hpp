#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "magnn/dataset.hpp"
#include "magnn/rules.hpp"

namespace magnn {

/// Edge colours between pair-nodes (a,b) and (c,d): SS iff a = c, SO iff
/// a = d, OS iff b = c, OO iff b = d. Every pair is linked to itself.
inline const std::vector<std::string> kPairColours = {"SS", "SO", "OS", "OO"};

/// Unary predicates are the binary predicates of `source`; binary predicates
/// are the four pair colours.
Signature pair_signature(const Signature& source);

std::string pair_name(const std::string& subject, const std::string& object);

struct PairEncoding {
  Signature signature;
  Dataset data;
  std::map<std::string, std::pair<std::string, std::string>> pairs;  // name -> (subject, object)
};

/// The ordered pairs that become pair-nodes: both orders of every pair
/// mentioned by a fact, or with `all_pairs` the full square over con(d).
std::vector<std::pair<std::string, std::string>> encoded_pairs(const Dataset& d, bool all_pairs);

/// Throws PreconditionError for unary facts or constants containing '|',
/// SignatureMismatch for predicates outside `source`.
PairEncoding lp_encode(const Dataset& d, const Signature& source, bool all_pairs = false);

/// Unary facts R(a|b) over the pair signature back to R(a,b).
Dataset lp_decode(const Dataset& pair_facts, const PairEncoding& enc);

/// `body(X,Y) -> head(X,Y)`; an empty body is written ⊤.
struct BinaryRule {
  std::vector<std::string> body;
  std::string head;
};

/// Unary atoms become atoms over (X,Y); existential atoms are dropped since
/// every pair-node has successors in every colour.
BinaryRule unfold_rule(const RestrictedRule& r);

std::string to_text(const BinaryRule& r);

/// Facts head(a,b) for every encoded pair (a,b) whose body atoms all hold.
Dataset immediate_consequences(const BinaryRule& r, const Dataset& d, bool all_pairs = false);

}  // namespace magnn
