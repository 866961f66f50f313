#pragma once

#include <compare>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace magnn {

/// A binary predicate read forwards (P) or backwards (P^-). Backward roles
/// only arise in explanations of models that aggregate over incoming edges.
struct Role {
  std::string predicate;
  bool inverse = false;

  auto operator<=>(const Role&) const = default;
};

enum class ConceptKind {
  top,
  atomic,
  conjunction,
  disjunction,
  exists,          // EXISTS P.(C)
  at_least,        // ATLEAST n P.(C)
  exists_unique,   // n distinct P-successors matching C_1..C_n, at most m in total
  negation,        // ALCQ only
  for_all,         // ALCQ only
  at_most,         // ATMOST n P.(C), ALCQ only
};

/// Immutable concept tree with shared subtrees and value semantics.
class Concept {
 public:
  static Concept top();
  static Concept atomic(std::string predicate);
  static Concept conjunction(std::vector<Concept> parts);
  static Concept disjunction(std::vector<Concept> parts);
  static Concept exists(Role role, Concept filler);
  static Concept at_least(int n, Role role, Concept filler);
  /// `slots.size()` is n; `max_degree` is m.
  static Concept exists_unique(Role role, std::vector<Concept> slots, int max_degree);
  static Concept negation(Concept inner);
  static Concept for_all(Role role, Concept filler);
  static Concept at_most(int n, Role role, Concept filler);

  ConceptKind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const Role& role() const { return node_->role; }
  /// n of ATLEAST / ATMOST / EXISTSU.
  int count() const { return node_->count; }
  /// m of EXISTSU.
  int max_degree() const { return node_->bound; }
  std::span<const Concept> children() const { return node_->children; }
  const Concept& child() const { return node_->children.front(); }

  bool operator==(const Concept& other) const;

 private:
  struct Node {
    ConceptKind kind = ConceptKind::top;
    std::string name;
    Role role;
    int count = 0;
    int bound = 0;
    std::vector<Concept> children;
  };

  explicit Concept(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Concept make(Node node);

  std::shared_ptr<const Node> node_;
};

/// A rule `body => head` with a unary head predicate.
struct Rule {
  Concept body;
  std::string head;

  bool operator==(const Rule&) const = default;
};

/// Top, atoms, AND, OR, EXISTS and ATLEAST over forward roles.
bool is_eluq(const Concept& c);
/// Top, atoms, AND and EXISTSU with n >= 1 and m >= n.
bool is_omega(const Concept& c);

/// Flattens nested AND/OR, drops duplicate operands, collapses singleton
/// AND/OR, and sorts operands: Top, atoms, then quantified concepts, each by
/// their text. EXISTSU slots keep their order.
Concept canonical(const Concept& c);

/// Rule text grammar: TOP, A, C AND D, C OR D, EXISTS P.(C), ATLEAST n P.(C),
/// EXISTSU n P.(C1;...;Cn) MAXDEG m, NOT (C), FORALL P.(C), ATMOST n P.(C).
/// Backward roles are written P^-.
std::string to_text(const Concept& c);
std::string to_text(const Rule& r);

/// Description-logic notation (⊤, ⊓, ⊔, ∃, ≥, ∃_n ... ⊓ ≤_m P.⊤, ⊑).
/// Conjunctions at the top level are joined by " ⊓ "; those nested inside a
/// quantifier are joined by "⊓".
std::string to_dl(const Concept& c);
std::string to_dl(const Rule& r);

/// Throws ParseError (line 1, 1-based column) on malformed input.
Concept parse_concept(std::string_view text);
Rule parse_rule(std::string_view text);

/// Reads one rule per non-empty, non-comment line.
std::vector<Rule> parse_rules(std::string_view text);

/// Every predicate name used by `c`, split by arity.
void collect_predicates(const Concept& c, std::vector<std::string>& unary,
                        std::vector<std::string>& binary);

/// Nesting depth of role quantifiers.
int role_depth(const Concept& c);

}  // namespace magnn
