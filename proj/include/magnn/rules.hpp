#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>

#include "magnn/concept.hpp"
#include "magnn/dataset.hpp"

namespace magnn {

/// head <- A_1 AND ... AND A_k AND EXISTS P_1.TOP AND ... AND EXISTS P_j.TOP.
/// Both body sets may be empty.
struct RestrictedRule {
  std::string head;
  std::set<std::string> unary;
  std::set<std::string> exist;

  std::size_t body_size() const { return unary.size() + exist.size(); }

  auto operator<=>(const RestrictedRule&) const = default;
};

/// Same head and both body sets of r1 contained in those of r2.
bool subsumes_restricted(const RestrictedRule& r1, const RestrictedRule& r2);

/// Canonical concept form; an empty body becomes TOP.
Rule restricted_to_rule(const RestrictedRule& r);

/// The restricted form of `r` when its body is a conjunction of TOP, atoms
/// and EXISTS P.TOP over forward roles.
std::optional<RestrictedRule> as_restricted(const Rule& r);

std::string to_text(const RestrictedRule& r);
std::string to_dl(const RestrictedRule& r);

/// Throws SignatureMismatch when a predicate is missing from `sig` or used
/// with the wrong arity.
void check_signature(const RestrictedRule& r, const Signature& sig);

}  // namespace magnn
