#include "magnn/rules.hpp"

#include <algorithm>

#include "magnn/error.hpp"

namespace magnn {

bool subsumes_restricted(const RestrictedRule& r1, const RestrictedRule& r2) {
  return r1.head == r2.head &&
         std::includes(r2.unary.begin(), r2.unary.end(), r1.unary.begin(), r1.unary.end()) &&
         std::includes(r2.exist.begin(), r2.exist.end(), r1.exist.begin(), r1.exist.end());
}

Rule restricted_to_rule(const RestrictedRule& r) {
  std::vector<Concept> parts;
  for (const auto& a : r.unary) parts.push_back(Concept::atomic(a));
  for (const auto& p : r.exist) parts.push_back(Concept::exists(Role{p, false}, Concept::top()));
  if (parts.empty()) return Rule{Concept::top(), r.head};
  return Rule{canonical(Concept::conjunction(std::move(parts))), r.head};
}

namespace {

bool collect(const Concept& c, RestrictedRule& out) {
  switch (c.kind()) {
    case ConceptKind::top: return true;
    case ConceptKind::atomic: out.unary.insert(c.name()); return true;
    case ConceptKind::exists:
      if (c.role().inverse || c.child().kind() != ConceptKind::top) return false;
      out.exist.insert(c.role().predicate);
      return true;
    case ConceptKind::conjunction:
      for (const auto& part : c.children())
        if (!collect(part, out)) return false;
      return true;
    default: return false;
  }
}

}  // namespace

std::optional<RestrictedRule> as_restricted(const Rule& r) {
  RestrictedRule out;
  out.head = r.head;
  if (!collect(r.body, out)) return std::nullopt;
  return out;
}

std::string to_text(const RestrictedRule& r) { return to_text(restricted_to_rule(r)); }
std::string to_dl(const RestrictedRule& r) { return to_dl(restricted_to_rule(r)); }

void check_signature(const RestrictedRule& r, const Signature& sig) {
  if (!sig.unary_index(r.head))
    throw SignatureMismatch("rule head '" + r.head + "' is not a unary predicate of the signature");
  for (const auto& a : r.unary)
    if (!sig.unary_index(a)) throw SignatureMismatch("unknown unary predicate '" + a + "' in rule body");
  for (const auto& p : r.exist)
    if (!sig.binary_index(p)) throw SignatureMismatch("unknown binary predicate '" + p + "' in rule body");
}

}  // namespace magnn
