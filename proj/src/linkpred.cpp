#include "magnn/linkpred.hpp"

#include <set>

#include "magnn/error.hpp"

namespace magnn {

Signature pair_signature(const Signature& source) {
  for (const auto& c : kPairColours)
    if (source.binary_index(c))
      throw SignatureMismatch("binary predicate '" + c + "' clashes with a pair colour");
  return Signature(source.binary(), kPairColours);
}

std::string pair_name(const std::string& subject, const std::string& object) {
  return subject + "|" + object;
}

std::vector<std::pair<std::string, std::string>> encoded_pairs(const Dataset& d, bool all_pairs) {
  std::set<std::pair<std::string, std::string>> pairs;
  if (all_pairs) {
    auto cons = d.constants();
    for (const auto& a : cons)
      for (const auto& b : cons) pairs.emplace(a, b);
  } else {
    for (const auto& f : d) {
      if (!f.is_binary()) continue;
      pairs.emplace(f.first, f.second);
      pairs.emplace(f.second, f.first);
    }
  }
  return {pairs.begin(), pairs.end()};
}

PairEncoding lp_encode(const Dataset& d, const Signature& source, bool all_pairs) {
  PairEncoding enc;
  enc.signature = pair_signature(source);
  for (const auto& f : d) {
    if (!f.is_binary())
      throw PreconditionError("link prediction input must be binary facts only, got " + to_string(f));
    if (!source.binary_index(f.predicate))
      throw SignatureMismatch("unknown binary predicate '" + f.predicate + "'");
    if (f.first.find('|') != std::string::npos || f.second.find('|') != std::string::npos)
      throw PreconditionError("constant names must not contain '|': " + to_string(f));
  }
  auto pairs = encoded_pairs(d, all_pairs);
  for (const auto& [s, o] : pairs) enc.pairs.emplace(pair_name(s, o), std::make_pair(s, o));
  for (const auto& f : d) enc.data.insert(Fact::unary(f.predicate, pair_name(f.first, f.second)));

  // Pairs sharing a constant, grouped by that constant and its position.
  std::map<std::string, std::vector<std::size_t>> by_subject, by_object;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    by_subject[pairs[i].first].push_back(i);
    by_object[pairs[i].second].push_back(i);
  }
  auto link = [&](const std::string& colour, std::size_t p, std::size_t q) {
    enc.data.insert(Fact::binary(colour, pair_name(pairs[p].first, pairs[p].second),
                                 pair_name(pairs[q].first, pairs[q].second)));
  };
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& [s, o] = pairs[p];
    for (auto q : by_subject[s]) link("SS", p, q);
    for (auto q : by_object[s]) link("SO", p, q);
    for (auto q : by_subject[o]) link("OS", p, q);
    for (auto q : by_object[o]) link("OO", p, q);
  }
  return enc;
}

Dataset lp_decode(const Dataset& pair_facts, const PairEncoding& enc) {
  Dataset out;
  for (const auto& f : pair_facts) {
    if (f.is_binary()) continue;
    auto it = enc.pairs.find(f.first);
    if (it == enc.pairs.end()) throw UnknownConstant("'" + f.first + "' is not a pair of the encoding");
    out.insert(Fact::binary(f.predicate, it->second.first, it->second.second));
  }
  return out;
}

BinaryRule unfold_rule(const RestrictedRule& r) {
  return BinaryRule{{r.unary.begin(), r.unary.end()}, r.head};
}

std::string to_text(const BinaryRule& r) {
  std::string body;
  for (const auto& a : r.body) {
    if (!body.empty()) body += " ∧ ";
    body += a + "(X,Y)";
  }
  if (body.empty()) body = "⊤";
  return body + " → " + r.head + "(X,Y)";
}

Dataset immediate_consequences(const BinaryRule& r, const Dataset& d, bool all_pairs) {
  Dataset out;
  for (const auto& [s, o] : encoded_pairs(d, all_pairs)) {
    bool fires = true;
    for (const auto& a : r.body)
      if (!d.contains(Fact::binary(a, s, o))) {
        fires = false;
        break;
      }
    if (fires) out.insert(Fact::binary(r.head, s, o));
  }
  return out;
}

}  // namespace magnn
