#include "magnn/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

#include "magnn/error.hpp"

namespace magnn {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(line, line_no);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

}  // namespace

std::string_view to_string(Direction d) { return d == Direction::out ? "out" : "in"; }

Direction parse_direction(std::string_view text) {
  if (text == "out") return Direction::out;
  if (text == "in") return Direction::in;
  throw Error("unknown aggregation direction '" + std::string(text) + "' (expected out|in)");
}

bool is_valid_name(std::string_view name) {
  if (name.empty()) return false;
  return std::none_of(name.begin(), name.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ',' ||
           c == ';';
  });
}

Signature::Signature(std::vector<std::string> unary, std::vector<std::string> binary)
    : unary_(std::move(unary)), binary_(std::move(binary)) {
  auto add = [](auto& lookup, auto& other, const std::string& name, std::size_t i) {
    if (!is_valid_name(name)) throw SignatureMismatch("invalid predicate name '" + name + "'");
    if (lookup.count(name) || other.count(name))
      throw SignatureMismatch("duplicate predicate name '" + name + "'");
    lookup.emplace(name, i);
  };
  for (std::size_t i = 0; i < unary_.size(); ++i) add(unary_lookup_, binary_lookup_, unary_[i], i);
  for (std::size_t i = 0; i < binary_.size(); ++i)
    add(binary_lookup_, unary_lookup_, binary_[i], i);
}

std::optional<std::size_t> Signature::unary_index(std::string_view name) const {
  auto it = unary_lookup_.find(name);
  if (it == unary_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Signature::binary_index(std::string_view name) const {
  auto it = binary_lookup_.find(name);
  if (it == binary_lookup_.end()) return std::nullopt;
  return it->second;
}

Signature parse_signature(std::string_view text) {
  std::vector<std::string> unary, binary;
  std::vector<std::string>* section = nullptr;
  for_each_line(text, [&](std::string_view raw, std::size_t line_no) {
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') return;
    if (line == "unary:") {
      section = &unary;
    } else if (line == "binary:") {
      section = &binary;
    } else if (section == nullptr) {
      throw ParseError("predicate listed before a 'unary:' or 'binary:' header", line_no);
    } else if (!is_valid_name(line)) {
      throw ParseError("invalid predicate name '" + std::string(line) + "'", line_no);
    } else {
      section->emplace_back(line);
    }
  });
  return Signature(std::move(unary), std::move(binary));
}

std::string serialize_signature(const Signature& sig) {
  std::string out = "unary:\n";
  for (const auto& u : sig.unary()) out += u + "\n";
  out += "binary:\n";
  for (const auto& b : sig.binary()) out += b + "\n";
  return out;
}

Fact Fact::unary(std::string predicate, std::string constant) {
  return Fact{std::move(predicate), std::move(constant), {}};
}

Fact Fact::binary(std::string predicate, std::string subject, std::string object) {
  return Fact{std::move(predicate), std::move(subject), std::move(object)};
}

std::string to_string(const Fact& f) {
  if (f.is_binary()) return f.predicate + "(" + f.first + "," + f.second + ")";
  return f.predicate + "(" + f.first + ")";
}

Fact parse_fact(std::string_view text, std::size_t line) {
  auto s = trim(text);
  auto open = s.find('(');
  if (open == std::string_view::npos || s.back() != ')')
    throw ParseError("expected Pred(c) or Pred(c1,c2), got '" + std::string(s) + "'", line);
  auto pred = trim(s.substr(0, open));
  auto args = s.substr(open + 1, s.size() - open - 2);
  if (!is_valid_name(pred))
    throw ParseError("invalid predicate name '" + std::string(pred) + "'", line, 1);
  auto comma = args.find(',');
  auto first = trim(args.substr(0, comma));
  if (!is_valid_name(first))
    throw ParseError("invalid constant '" + std::string(first) + "'", line, open + 2);
  if (comma == std::string_view::npos) return Fact::unary(std::string(pred), std::string(first));
  auto second = trim(args.substr(comma + 1));
  if (!is_valid_name(second))
    throw ParseError("invalid constant '" + std::string(second) + "'", line, open + comma + 3);
  return Fact::binary(std::string(pred), std::string(first), std::string(second));
}

std::set<std::string> Dataset::constants() const {
  std::set<std::string> out;
  for (const auto& f : facts_) {
    out.insert(f.first);
    if (f.is_binary()) out.insert(f.second);
  }
  return out;
}

bool Dataset::mentions(std::string_view constant) const {
  return std::any_of(facts_.begin(), facts_.end(), [&](const Fact& f) {
    return f.first == constant || (f.is_binary() && f.second == constant);
  });
}

bool Dataset::subset_of(const Dataset& other) const {
  return std::includes(other.facts_.begin(), other.facts_.end(), facts_.begin(), facts_.end());
}

void Dataset::check_signature(const Signature& sig) const {
  for (const auto& f : facts_) {
    if (f.is_binary()) {
      if (!sig.binary_index(f.predicate)) {
        if (sig.unary_index(f.predicate))
          throw SignatureMismatch("predicate '" + f.predicate + "' is unary but used with two arguments");
        throw SignatureMismatch("unknown binary predicate '" + f.predicate + "'");
      }
    } else if (!sig.unary_index(f.predicate)) {
      if (sig.binary_index(f.predicate))
        throw SignatureMismatch("predicate '" + f.predicate + "' is binary but used with one argument");
      throw SignatureMismatch("unknown unary predicate '" + f.predicate + "'");
    }
  }
}

Dataset Dataset::renamed(const std::map<std::string, std::string>& mapping) const {
  auto map_one = [&](const std::string& c) {
    auto it = mapping.find(c);
    return it == mapping.end() ? c : it->second;
  };
  Dataset out;
  for (const auto& f : facts_) {
    if (f.is_binary())
      out.insert(Fact::binary(f.predicate, map_one(f.first), map_one(f.second)));
    else
      out.insert(Fact::unary(f.predicate, map_one(f.first)));
  }
  return out;
}

Dataset parse_dataset(std::string_view text, const Signature* sig) {
  Dataset d;
  for_each_line(text, [&](std::string_view raw, std::size_t line_no) {
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') return;
    Fact f = parse_fact(line, line_no);
    if (sig != nullptr) {
      bool known = f.is_binary() ? sig->binary_index(f.predicate).has_value()
                                 : sig->unary_index(f.predicate).has_value();
      if (!known) {
        bool other_arity = f.is_binary() ? sig->unary_index(f.predicate).has_value()
                                         : sig->binary_index(f.predicate).has_value();
        throw ParseError(other_arity ? "arity mismatch for predicate '" + f.predicate + "'"
                                     : "unknown predicate '" + f.predicate + "'",
                         line_no);
      }
    }
    d.insert(std::move(f));
  });
  return d;
}

std::string serialize_dataset(const Dataset& d) {
  std::string out;
  for (const auto& f : d) out += to_string(f) + "\n";
  return out;
}

Dataset khop_neighborhood(const Dataset& d, std::string_view constant, int hops, Direction dir) {
  if (hops < 0) throw PreconditionError("hop count must be non-negative");
  if (!d.mentions(constant))
    throw UnknownConstant("constant '" + std::string(constant) + "' does not occur in the dataset");

  std::map<std::string, std::vector<const Fact*>, std::less<>> unary_of, edges_of;
  for (const auto& f : d) {
    if (!f.is_binary())
      unary_of[f.first].push_back(&f);
    else
      edges_of[dir == Direction::out ? f.first : f.second].push_back(&f);
  }

  // Largest remaining hop budget with which each constant was reached. A
  // constant is re-expanded only when reached with a strictly larger budget.
  std::map<std::string, int, std::less<>> budget;
  std::deque<std::pair<std::string, int>> queue;
  budget.emplace(std::string(constant), hops);
  queue.emplace_back(std::string(constant), hops);

  Dataset out;
  while (!queue.empty()) {
    auto [c, left] = queue.front();
    queue.pop_front();
    if (budget[c] != left) continue;
    if (auto it = unary_of.find(c); it != unary_of.end())
      for (const Fact* f : it->second) out.insert(*f);
    if (left == 0) continue;
    auto it = edges_of.find(c);
    if (it == edges_of.end()) continue;
    for (const Fact* f : it->second) {
      out.insert(*f);
      const std::string& next = dir == Direction::out ? f->second : f->first;
      auto [pos, fresh] = budget.emplace(next, left - 1);
      if (fresh || pos->second < left - 1) {
        pos->second = left - 1;
        queue.emplace_back(next, left - 1);
      }
    }
  }
  return out;
}

}  // namespace magnn
