#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "magnn/explain.hpp"
#include "magnn/fuzz.hpp"
#include "magnn/model.hpp"
#include "magnn/soundness.hpp"

namespace magnn {

enum class Format { plain, json };

Format parse_format(std::string_view text);

std::string_view to_string(Diagnostic::Kind k);

/// Rule-shape counts of an extraction: bodies with only unary atoms (un),
/// only existential atoms (bin), both (mix), and empty bodies.
struct ShapeCounts {
  std::size_t total = 0, unary = 0, binary = 0, mixed = 0, empty = 0;
};
ShapeCounts shape_counts(std::span<const RestrictedRule> rules);

std::string format_dataset(const Dataset& d, Format f);
std::string format_diagnostics(const std::vector<Diagnostic>& diags, Format f);
std::string format_extraction(const ExtractionReport& r, Format f);
std::string format_verdicts(std::span<const EluqVerdict> verdicts, Format f);
std::string format_explanations(std::span<const Explanation> explanations, Format f);
std::string format_fuzz(std::span<const FuzzReport> reports, Format f);

}  // namespace magnn
