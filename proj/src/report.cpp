#include "magnn/report.hpp"

#include <json.hpp>
#include <sstream>

#include "magnn/error.hpp"

namespace magnn {

using nlohmann::ordered_json;

namespace {

std::string dataset_inline(const Dataset& d) {
  std::string out;
  for (const auto& f : d) {
    if (!out.empty()) out += " ";
    out += to_string(f);
  }
  return out.empty() ? "(empty)" : out;
}

ordered_json dataset_json(const Dataset& d) {
  ordered_json out = ordered_json::array();
  for (const auto& f : d) out.push_back(to_string(f));
  return out;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

Format parse_format(std::string_view text) {
  if (text == "plain") return Format::plain;
  if (text == "json") return Format::json;
  throw ParseError("unknown format '" + std::string(text) + "'", 1);
}

std::string_view to_string(Diagnostic::Kind k) {
  switch (k) {
    case Diagnostic::Kind::empty_model: return "empty-model";
    case Diagnostic::Kind::dimension_mismatch: return "dimension-mismatch";
    case Diagnostic::Kind::negative_weight: return "negative-weight";
    case Diagnostic::Kind::bad_activation: return "bad-activation";
    case Diagnostic::Kind::non_finite: return "non-finite";
  }
  return "?";
}

ShapeCounts shape_counts(std::span<const RestrictedRule> rules) {
  ShapeCounts s;
  for (const auto& r : rules) {
    ++s.total;
    if (r.unary.empty() && r.exist.empty())
      ++s.empty;
    else if (r.exist.empty())
      ++s.unary;
    else if (r.unary.empty())
      ++s.binary;
    else
      ++s.mixed;
  }
  return s;
}

std::string format_dataset(const Dataset& d, Format f) {
  if (f == Format::json) return dump(dataset_json(d));
  return serialize_dataset(d);
}

std::string format_diagnostics(const std::vector<Diagnostic>& diags, Format f) {
  if (f == Format::json) {
    ordered_json out = ordered_json::array();
    for (const auto& d : diags) {
      ordered_json j;
      j["kind"] = to_string(d.kind);
      j["layer"] = d.layer;
      j["matrix"] = d.matrix;
      j["row"] = d.row;
      j["col"] = d.col;
      j["message"] = d.message;
      out.push_back(j);
    }
    return dump(out);
  }
  if (diags.empty()) return "valid\n";
  std::ostringstream os;
  for (const auto& d : diags) os << to_string(d.kind) << ": " << d.message << "\n";
  return os.str();
}

std::string format_extraction(const ExtractionReport& r, Format f) {
  const auto shapes = shape_counts(r.minimal_sound);
  if (f == Format::json) {
    ordered_json j;
    j["rules"] = ordered_json::array();
    for (const auto& rule : r.minimal_sound) j["rules"].push_back(to_text(rule));
    j["max_body_size"] = r.max_body_size;
    j["candidates"] = r.candidates_visited;
    j["checked"] = r.candidates_checked;
    j["minimal_sound"] = r.minimal_sound.size();
    j["subsumed_sound"] = r.subsumed_sound;
    j["tot"] = shapes.total;
    j["un"] = shapes.unary;
    j["bin"] = shapes.binary;
    j["mix"] = shapes.mixed;
    j["empty"] = shapes.empty;
    ordered_json sizes = ordered_json::object();
    for (const auto& [size, count] : r.per_body_size) sizes[std::to_string(size)] = count;
    j["per_body_size"] = sizes;
    if (r.warning) j["warning"] = *r.warning;
    return dump(j);
  }
  std::ostringstream os;
  for (const auto& rule : r.minimal_sound) os << to_text(rule) << "\n";
  os << "\n# summary\n";
  os << "max-body-size " << r.max_body_size << "\n";
  os << "candidates " << r.candidates_visited << "\n";
  os << "checked " << r.candidates_checked << "\n";
  os << "subsumed " << r.subsumed_sound << "\n";
  os << "tot " << shapes.total << " un " << shapes.unary << " bin " << shapes.binary << " mix "
     << shapes.mixed << " empty " << shapes.empty << "\n";
  for (const auto& [size, count] : r.per_body_size) os << "size " << size << " " << count << "\n";
  return os.str();
}

std::string format_verdicts(std::span<const EluqVerdict> verdicts, Format f) {
  if (f == Format::json) {
    ordered_json out = ordered_json::array();
    for (const auto& v : verdicts) {
      ordered_json j;
      j["rule"] = to_text(v.rule);
      j["verdict"] = v.sound ? "sound" : "unsound";
      j["parts"] = ordered_json::array();
      for (const auto& p : v.parts) {
        ordered_json pj;
        pj["rule"] = to_text(p.rule);
        pj["verdict"] = p.sound ? "sound" : "unsound";
        if (p.witness) {
          pj["witness"] = dataset_json(p.witness->data);
          pj["anchor"] = p.witness->anchor;
        }
        j["parts"].push_back(pj);
      }
      out.push_back(j);
    }
    return dump(out);
  }
  std::ostringstream os;
  for (const auto& v : verdicts) {
    os << "rule: " << to_text(v.rule) << "\n";
    os << "verdict: " << (v.sound ? "sound" : "unsound") << "\n";
    for (const auto& p : v.parts) {
      os << "part: " << to_text(p.rule) << " : " << (p.sound ? "sound" : "unsound");
      if (p.witness) os << " witness " << dataset_inline(p.witness->data) << " at " << p.witness->anchor;
      os << "\n";
    }
    os << "\n";
  }
  return os.str();
}

std::string format_explanations(std::span<const Explanation> explanations, Format f) {
  if (f == Format::json) {
    ordered_json out = ordered_json::array();
    for (const auto& e : explanations) {
      ordered_json j;
      j["fact"] = to_string(e.fact);
      j["strategy"] = to_string(e.strategy);
      j["rule"] = to_text(e.rule);
      j["dl"] = to_dl(e.rule);
      j["body_concepts"] = e.body_concepts;
      j["witness"] = dataset_json(e.witness);
      out.push_back(j);
    }
    return dump(out);
  }
  std::ostringstream os;
  for (const auto& e : explanations) {
    os << "fact: " << to_string(e.fact) << "\n";
    os << "strategy: " << to_string(e.strategy) << "\n";
    os << "rule: " << to_text(e.rule) << "\n";
    os << "dl: " << to_dl(e.rule) << "\n";
    os << "body-concepts: " << e.body_concepts << "\n";
    os << "witness: " << dataset_inline(e.witness) << "\n\n";
  }
  return os.str();
}

std::string format_fuzz(std::span<const FuzzReport> reports, Format f) {
  if (f == Format::json) {
    ordered_json out = ordered_json::array();
    for (const auto& r : reports) {
      ordered_json j;
      j["rule"] = r.rule;
      j["model"] = r.model_digest;
      j["seed"] = r.seed;
      j["trials"] = r.trials;
      j["body_firings"] = r.body_firings;
      j["vacuous"] = r.vacuous();
      j["violations"] = r.violation_count;
      j["examples"] = ordered_json::array();
      for (const auto& v : r.violations) {
        ordered_json vj;
        vj["trial"] = v.trial;
        vj["fact"] = to_string(v.fact);
        vj["dataset"] = dataset_json(v.dataset);
        j["examples"].push_back(vj);
      }
      out.push_back(j);
    }
    return dump(out);
  }
  std::ostringstream os;
  for (const auto& r : reports) {
    os << "rule: " << r.rule << "\n";
    os << "model: " << r.model_digest << "\n";
    os << "seed: " << r.seed << "\n";
    os << "trials: " << r.trials << "\n";
    os << "body-firings: " << r.body_firings << (r.vacuous() ? " (vacuous)" : "") << "\n";
    os << "violations: " << r.violation_count << "\n";
    for (const auto& v : r.violations)
      os << "  trial " << v.trial << ": " << to_string(v.fact) << " missing on "
         << dataset_inline(v.dataset) << "\n";
    os << "\n";
  }
  return os.str();
}

}  // namespace magnn
