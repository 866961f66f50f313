#include "magnn/concept.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "magnn/dataset.hpp"
#include "magnn/error.hpp"

namespace magnn {

Concept Concept::make(Node node) { return Concept(std::make_shared<const Node>(std::move(node))); }

Concept Concept::top() {
  static const Concept t = make(Node{});
  return t;
}

Concept Concept::atomic(std::string predicate) {
  Node n;
  n.kind = ConceptKind::atomic;
  n.name = std::move(predicate);
  return make(std::move(n));
}

Concept Concept::conjunction(std::vector<Concept> parts) {
  if (parts.empty()) return top();
  if (parts.size() == 1) return parts.front();
  Node n;
  n.kind = ConceptKind::conjunction;
  n.children = std::move(parts);
  return make(std::move(n));
}

Concept Concept::disjunction(std::vector<Concept> parts) {
  if (parts.empty()) throw PreconditionError("disjunction needs at least one operand");
  if (parts.size() == 1) return parts.front();
  Node n;
  n.kind = ConceptKind::disjunction;
  n.children = std::move(parts);
  return make(std::move(n));
}

Concept Concept::exists(Role role, Concept filler) {
  Node n;
  n.kind = ConceptKind::exists;
  n.role = std::move(role);
  n.count = 1;
  n.children = {std::move(filler)};
  return make(std::move(n));
}

Concept Concept::at_least(int count, Role role, Concept filler) {
  if (count < 1) throw PreconditionError("ATLEAST needs n >= 1");
  Node n;
  n.kind = ConceptKind::at_least;
  n.role = std::move(role);
  n.count = count;
  n.children = {std::move(filler)};
  return make(std::move(n));
}

Concept Concept::exists_unique(Role role, std::vector<Concept> slots, int max_degree) {
  if (slots.empty()) throw PreconditionError("EXISTSU needs at least one slot");
  Node n;
  n.kind = ConceptKind::exists_unique;
  n.role = std::move(role);
  n.count = static_cast<int>(slots.size());
  n.bound = max_degree;
  n.children = std::move(slots);
  return make(std::move(n));
}

Concept Concept::negation(Concept inner) {
  Node n;
  n.kind = ConceptKind::negation;
  n.children = {std::move(inner)};
  return make(std::move(n));
}

Concept Concept::for_all(Role role, Concept filler) {
  Node n;
  n.kind = ConceptKind::for_all;
  n.role = std::move(role);
  n.children = {std::move(filler)};
  return make(std::move(n));
}

Concept Concept::at_most(int count, Role role, Concept filler) {
  if (count < 0) throw PreconditionError("ATMOST needs n >= 0");
  Node n;
  n.kind = ConceptKind::at_most;
  n.role = std::move(role);
  n.count = count;
  n.children = {std::move(filler)};
  return make(std::move(n));
}

bool Concept::operator==(const Concept& other) const {
  if (node_ == other.node_) return true;
  const Node& a = *node_;
  const Node& b = *other.node_;
  return a.kind == b.kind && a.name == b.name && a.role == b.role && a.count == b.count &&
         a.bound == b.bound && a.children == b.children;
}

bool is_eluq(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::top:
    case ConceptKind::atomic: return true;
    case ConceptKind::conjunction:
    case ConceptKind::disjunction:
      return std::all_of(c.children().begin(), c.children().end(), is_eluq);
    case ConceptKind::exists:
    case ConceptKind::at_least: return !c.role().inverse && is_eluq(c.child());
    default: return false;
  }
}

bool is_omega(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::top:
    case ConceptKind::atomic: return true;
    case ConceptKind::conjunction:
      return std::all_of(c.children().begin(), c.children().end(), is_omega);
    case ConceptKind::exists_unique:
      return c.count() >= 1 && c.max_degree() >= c.count() &&
             std::all_of(c.children().begin(), c.children().end(), is_omega);
    default: return false;
  }
}

namespace {

int kind_rank(ConceptKind k) {
  switch (k) {
    case ConceptKind::top: return 0;
    case ConceptKind::atomic: return 1;
    case ConceptKind::negation: return 2;
    case ConceptKind::exists: return 3;
    case ConceptKind::at_least: return 4;
    case ConceptKind::exists_unique: return 5;
    case ConceptKind::for_all: return 6;
    case ConceptKind::at_most: return 7;
    case ConceptKind::disjunction: return 8;
    case ConceptKind::conjunction: return 9;
  }
  return 10;
}

std::string role_text(const Role& r) { return r.predicate + (r.inverse ? "^-" : ""); }

std::string text_operand(const Concept& c, ConceptKind parent) {
  std::string s = to_text(c);
  // AND binds tighter than OR.
  if (parent == ConceptKind::conjunction && c.kind() == ConceptKind::disjunction) return "(" + s + ")";
  return s;
}

std::string dl_impl(const Concept& c, bool nested);

std::string dl_filler(const Concept& c) {
  if (c.kind() == ConceptKind::top || c.kind() == ConceptKind::atomic) return dl_impl(c, true);
  return "(" + dl_impl(c, true) + ")";
}

std::string dl_impl(const Concept& c, bool nested) {
  const std::string and_sep = nested ? "⊓" : " ⊓ ";
  const std::string or_sep = nested ? "⊔" : " ⊔ ";
  switch (c.kind()) {
    case ConceptKind::top: return "⊤";
    case ConceptKind::atomic: return c.name();
    case ConceptKind::conjunction: {
      std::string out;
      for (const auto& part : c.children()) {
        if (!out.empty()) out += and_sep;
        std::string s = dl_impl(part, nested);
        out += part.kind() == ConceptKind::disjunction ? "(" + s + ")" : s;
      }
      return out;
    }
    case ConceptKind::disjunction: {
      std::string out;
      for (const auto& part : c.children()) {
        if (!out.empty()) out += or_sep;
        std::string s = dl_impl(part, nested);
        out += part.kind() == ConceptKind::exists_unique ? "(" + s + ")" : s;
      }
      return out;
    }
    case ConceptKind::exists: return "∃" + role_text(c.role()) + "." + dl_filler(c.child());
    case ConceptKind::at_least:
      return "≥" + std::to_string(c.count()) + " " + role_text(c.role()) + "." + dl_filler(c.child());
    case ConceptKind::exists_unique: {
      std::string slots;
      for (const auto& s : c.children()) {
        if (!slots.empty()) slots += ", ";
        slots += dl_impl(s, true);
      }
      return "∃_" + std::to_string(c.count()) + " " + role_text(c.role()) + ".(" + slots + ")" +
             and_sep + "≤_" + std::to_string(c.max_degree()) + " " + role_text(c.role()) + ".⊤";
    }
    case ConceptKind::negation: return "¬" + dl_filler(c.child());
    case ConceptKind::for_all: return "∀" + role_text(c.role()) + "." + dl_filler(c.child());
    case ConceptKind::at_most:
      return "≤" + std::to_string(c.count()) + " " + role_text(c.role()) + "." + dl_filler(c.child());
  }
  return "?";
}

}  // namespace

std::string to_text(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::top: return "TOP";
    case ConceptKind::atomic: return c.name();
    case ConceptKind::conjunction:
    case ConceptKind::disjunction: {
      const char* sep = c.kind() == ConceptKind::conjunction ? " AND " : " OR ";
      std::string out;
      for (const auto& part : c.children()) {
        if (!out.empty()) out += sep;
        out += text_operand(part, c.kind());
      }
      return out;
    }
    case ConceptKind::exists: return "EXISTS " + role_text(c.role()) + ".(" + to_text(c.child()) + ")";
    case ConceptKind::at_least:
      return "ATLEAST " + std::to_string(c.count()) + " " + role_text(c.role()) + ".(" +
             to_text(c.child()) + ")";
    case ConceptKind::exists_unique: {
      std::string slots;
      for (const auto& s : c.children()) {
        if (!slots.empty()) slots += ";";
        slots += to_text(s);
      }
      return "EXISTSU " + std::to_string(c.count()) + " " + role_text(c.role()) + ".(" + slots +
             ") MAXDEG " + std::to_string(c.max_degree());
    }
    case ConceptKind::negation: return "NOT (" + to_text(c.child()) + ")";
    case ConceptKind::for_all: return "FORALL " + role_text(c.role()) + ".(" + to_text(c.child()) + ")";
    case ConceptKind::at_most:
      return "ATMOST " + std::to_string(c.count()) + " " + role_text(c.role()) + ".(" +
             to_text(c.child()) + ")";
  }
  return "?";
}

std::string to_text(const Rule& r) { return to_text(r.body) + " => " + r.head; }

std::string to_dl(const Concept& c) { return dl_impl(c, false); }

std::string to_dl(const Rule& r) { return to_dl(r.body) + " ⊑ " + r.head; }

Concept canonical(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::top:
    case ConceptKind::atomic: return c;
    case ConceptKind::conjunction:
    case ConceptKind::disjunction: {
      std::vector<Concept> flat;
      for (const auto& part : c.children()) {
        Concept cp = canonical(part);
        if (cp.kind() == c.kind())
          flat.insert(flat.end(), cp.children().begin(), cp.children().end());
        else
          flat.push_back(std::move(cp));
      }
      std::vector<std::pair<std::pair<int, std::string>, Concept>> keyed;
      for (auto& part : flat) keyed.push_back({{kind_rank(part.kind()), to_text(part)}, part});
      std::sort(keyed.begin(), keyed.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      keyed.erase(std::unique(keyed.begin(), keyed.end(),
                              [](const auto& x, const auto& y) { return x.first == y.first; }),
                  keyed.end());
      std::vector<Concept> parts;
      for (auto& k : keyed) parts.push_back(std::move(k.second));
      return c.kind() == ConceptKind::conjunction ? Concept::conjunction(std::move(parts))
                                                  : Concept::disjunction(std::move(parts));
    }
    case ConceptKind::exists: return Concept::exists(c.role(), canonical(c.child()));
    case ConceptKind::at_least: return Concept::at_least(c.count(), c.role(), canonical(c.child()));
    case ConceptKind::exists_unique: {
      std::vector<Concept> slots;
      for (const auto& s : c.children()) slots.push_back(canonical(s));
      return Concept::exists_unique(c.role(), std::move(slots), c.max_degree());
    }
    case ConceptKind::negation: return Concept::negation(canonical(c.child()));
    case ConceptKind::for_all: return Concept::for_all(c.role(), canonical(c.child()));
    case ConceptKind::at_most: return Concept::at_most(c.count(), c.role(), canonical(c.child()));
  }
  return c;
}

void collect_predicates(const Concept& c, std::vector<std::string>& unary,
                        std::vector<std::string>& binary) {
  if (c.kind() == ConceptKind::atomic) unary.push_back(c.name());
  switch (c.kind()) {
    case ConceptKind::exists:
    case ConceptKind::at_least:
    case ConceptKind::exists_unique:
    case ConceptKind::for_all:
    case ConceptKind::at_most: binary.push_back(c.role().predicate); break;
    default: break;
  }
  for (const auto& ch : c.children()) collect_predicates(ch, unary, binary);
}

int role_depth(const Concept& c) {
  int inner = 0;
  for (const auto& ch : c.children()) inner = std::max(inner, role_depth(ch));
  switch (c.kind()) {
    case ConceptKind::exists:
    case ConceptKind::at_least:
    case ConceptKind::exists_unique:
    case ConceptKind::for_all:
    case ConceptKind::at_most: return inner + 1;
    default: return inner;
  }
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { word, lparen, rparen, semi, arrow, end };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t column;  // 1-based
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (pos_ >= src_.size()) break;
      const std::size_t col = pos_ + 1;
      char c = src_[pos_];
      if (c == '(') {
        out.push_back({Tok::lparen, src_.substr(pos_++, 1), col});
      } else if (c == ')') {
        out.push_back({Tok::rparen, src_.substr(pos_++, 1), col});
      } else if (c == ';') {
        out.push_back({Tok::semi, src_.substr(pos_++, 1), col});
      } else if (src_.substr(pos_, 2) == "=>") {
        out.push_back({Tok::arrow, src_.substr(pos_, 2), col});
        pos_ += 2;
      } else {
        std::size_t start = pos_;
        while (pos_ < src_.size()) {
          char d = src_[pos_];
          if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';') break;
          if (src_.substr(pos_, 2) == "=>") break;
          ++pos_;
        }
        out.push_back({Tok::word, src_.substr(start, pos_ - start), col});
      }
    }
    out.push_back({Tok::end, {}, src_.size() + 1});
    return out;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
};

bool is_keyword(std::string_view w) {
  static constexpr std::string_view kws[] = {"TOP",    "AND",     "OR",     "EXISTS", "ATLEAST",
                                             "EXISTSU", "MAXDEG", "NOT",    "FORALL", "ATMOST"};
  return std::find(std::begin(kws), std::end(kws), w) != std::end(kws);
}

class Parser {
 public:
  explicit Parser(std::string_view src) : tokens_(Lexer(src).run()) {}

  Concept concept_only() {
    Concept c = or_expr();
    expect(Tok::end, "end of input");
    return c;
  }

  Rule rule() {
    Concept body = or_expr();
    expect(Tok::arrow, "'=>'");
    const Token& head = peek();
    if (head.kind != Tok::word || is_keyword(head.text) || !is_valid_name(head.text))
      fail("expected head predicate", head);
    ++i_;
    expect(Tok::end, "end of input");
    return Rule{std::move(body), std::string(head.text)};
  }

 private:
  const Token& peek() const { return tokens_[i_]; }

  [[noreturn]] void fail(const std::string& what, const Token& at) const {
    std::string got = at.kind == Tok::end ? "end of input" : "'" + std::string(at.text) + "'";
    throw ParseError(what + ", got " + got, 1, at.column);
  }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what, peek());
    ++i_;
  }

  bool accept_word(std::string_view w) {
    if (peek().kind == Tok::word && peek().text == w) {
      ++i_;
      return true;
    }
    return false;
  }

  int integer(int min_value) {
    const Token& t = peek();
    int value = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (t.kind != Tok::word || ec != std::errc() || ptr != t.text.data() + t.text.size() ||
        value < min_value)
      fail("expected an integer >= " + std::to_string(min_value), t);
    ++i_;
    return value;
  }

  Role role() {
    const Token& t = peek();
    if (t.kind != Tok::word) fail("expected a role 'P.'", t);
    std::string_view w = t.text;
    ++i_;
    if (!w.empty() && w.back() == '.') {
      w.remove_suffix(1);
    } else if (!accept_word(".")) {
      fail("expected '.' after role", peek());
    }
    Role r;
    if (w.size() > 2 && w.substr(w.size() - 2) == "^-") {
      r.inverse = true;
      w.remove_suffix(2);
    }
    if (!is_valid_name(w) || is_keyword(w)) fail("invalid role name", t);
    r.predicate = std::string(w);
    return r;
  }

  Concept parenthesised() {
    expect(Tok::lparen, "'('");
    Concept c = or_expr();
    expect(Tok::rparen, "')'");
    return c;
  }

  Concept or_expr() {
    std::vector<Concept> parts{and_expr()};
    while (accept_word("OR")) parts.push_back(and_expr());
    return parts.size() == 1 ? parts.front() : Concept::disjunction(std::move(parts));
  }

  Concept and_expr() {
    std::vector<Concept> parts{primary()};
    while (accept_word("AND")) parts.push_back(primary());
    return parts.size() == 1 ? parts.front() : Concept::conjunction(std::move(parts));
  }

  Concept primary() {
    const Token& t = peek();
    if (t.kind == Tok::lparen) return parenthesised();
    if (t.kind != Tok::word) fail("expected a concept", t);
    if (accept_word("TOP")) return Concept::top();
    if (accept_word("NOT")) return Concept::negation(parenthesised());
    if (accept_word("EXISTS")) {
      Role r = role();
      return Concept::exists(std::move(r), parenthesised());
    }
    if (accept_word("FORALL")) {
      Role r = role();
      return Concept::for_all(std::move(r), parenthesised());
    }
    if (accept_word("ATLEAST")) {
      int n = integer(1);
      Role r = role();
      return Concept::at_least(n, std::move(r), parenthesised());
    }
    if (accept_word("ATMOST")) {
      int n = integer(0);
      Role r = role();
      return Concept::at_most(n, std::move(r), parenthesised());
    }
    if (accept_word("EXISTSU")) {
      const Token& count_tok = peek();
      int n = integer(1);
      Role r = role();
      expect(Tok::lparen, "'('");
      std::vector<Concept> slots{or_expr()};
      while (peek().kind == Tok::semi) {
        ++i_;
        slots.push_back(or_expr());
      }
      expect(Tok::rparen, "')'");
      if (static_cast<int>(slots.size()) != n)
        fail("EXISTSU " + std::to_string(n) + " lists " + std::to_string(slots.size()) + " slots",
             count_tok);
      if (!accept_word("MAXDEG")) fail("expected 'MAXDEG'", peek());
      int m = integer(0);
      return Concept::exists_unique(std::move(r), std::move(slots), m);
    }
    if (is_keyword(t.text) || !is_valid_name(t.text)) fail("expected a concept", t);
    ++i_;
    return Concept::atomic(std::string(t.text));
  }

  std::vector<Token> tokens_;
  std::size_t i_ = 0;
};

}  // namespace

Concept parse_concept(std::string_view text) { return Parser(text).concept_only(); }

Rule parse_rule(std::string_view text) { return Parser(text).rule(); }

std::vector<Rule> parse_rules(std::string_view text) {
  std::vector<Rule> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;
    try {
      out.push_back(parse_rule(line));
    } catch (const ParseError& e) {
      throw ParseError(e.detail(), line_no, e.column());
    }
  }
  return out;
}

}  // namespace magnn
