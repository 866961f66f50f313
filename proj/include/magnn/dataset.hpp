#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace magnn {

/// Which neighbours a vertex aggregates over: `out` reads the targets of its
/// outgoing edges, `in` reads the sources of its incoming edges.
enum class Direction { out, in };

std::string_view to_string(Direction d);
Direction parse_direction(std::string_view text);

/// Predicates and constants: non-empty, no whitespace, no `(`, `)`, `,`, `;`.
bool is_valid_name(std::string_view name);

/// Ordered unary and binary predicate names. The position of a unary
/// predicate is its label component; the position of a binary predicate is
/// its edge colour.
class Signature {
 public:
  Signature() = default;
  Signature(std::vector<std::string> unary, std::vector<std::string> binary);

  const std::vector<std::string>& unary() const { return unary_; }
  const std::vector<std::string>& binary() const { return binary_; }

  std::size_t dim() const { return unary_.size(); }
  std::size_t colours() const { return binary_.size(); }

  std::optional<std::size_t> unary_index(std::string_view name) const;
  std::optional<std::size_t> binary_index(std::string_view name) const;

  bool operator==(const Signature& other) const {
    return unary_ == other.unary_ && binary_ == other.binary_;
  }

 private:
  std::vector<std::string> unary_;
  std::vector<std::string> binary_;
  std::map<std::string, std::size_t, std::less<>> unary_lookup_;
  std::map<std::string, std::size_t, std::less<>> binary_lookup_;
};

/// Signature file: sections `unary:` and `binary:`, one name per line.
Signature parse_signature(std::string_view text);
std::string serialize_signature(const Signature& sig);

/// A ground fact. `second` is empty for unary facts.
struct Fact {
  std::string predicate;
  std::string first;
  std::string second;

  static Fact unary(std::string predicate, std::string constant);
  static Fact binary(std::string predicate, std::string subject, std::string object);

  bool is_binary() const { return !second.empty(); }

  auto operator<=>(const Fact&) const = default;
};

std::string to_string(const Fact& f);

/// Parses a single `Pred(c)` or `Pred(c1,c2)` fact; `line` is used for errors.
Fact parse_fact(std::string_view text, std::size_t line = 1);

/// A finite set of facts.
class Dataset {
 public:
  using const_iterator = std::set<Fact>::const_iterator;

  Dataset() = default;
  Dataset(std::initializer_list<Fact> facts) : facts_(facts) {}
  explicit Dataset(std::set<Fact> facts) : facts_(std::move(facts)) {}

  bool insert(Fact f) { return facts_.insert(std::move(f)).second; }
  bool erase(const Fact& f) { return facts_.erase(f) > 0; }
  bool contains(const Fact& f) const { return facts_.count(f) > 0; }
  void merge(const Dataset& other) { facts_.insert(other.facts_.begin(), other.facts_.end()); }

  std::size_t size() const { return facts_.size(); }
  bool empty() const { return facts_.empty(); }
  const_iterator begin() const { return facts_.begin(); }
  const_iterator end() const { return facts_.end(); }
  const std::set<Fact>& facts() const { return facts_; }

  /// con(D): every constant mentioned by some fact, in lexicographic order.
  std::set<std::string> constants() const;
  bool mentions(std::string_view constant) const;

  /// True iff `this` is a subset of `other`.
  bool subset_of(const Dataset& other) const;

  /// Throws SignatureMismatch naming the first predicate that is unknown or
  /// used with the wrong arity.
  void check_signature(const Signature& sig) const;

  /// Applies `mapping` to every constant; constants absent from the map stay.
  Dataset renamed(const std::map<std::string, std::string>& mapping) const;

  bool operator==(const Dataset& other) const = default;

 private:
  std::set<Fact> facts_;
};

/// Fact file: one fact per line, `#` comments, blank lines ignored. When a
/// signature is given, predicates and arities are checked against it.
Dataset parse_dataset(std::string_view text, const Signature* sig = nullptr);

/// Sorted, one fact per line, trailing newline after each fact.
std::string serialize_dataset(const Dataset& d);

/// The sub-dataset a model with `hops` layers can see from `constant`: its
/// unary facts, plus for every hop the binary facts leaving each reached
/// constant in `dir` and, recursively, the neighbourhoods of their endpoints.
Dataset khop_neighborhood(const Dataset& d, std::string_view constant, int hops,
                          Direction dir = Direction::out);

}  // namespace magnn
