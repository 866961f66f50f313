// Batch command-line front end: inference, rule extraction, soundness
// checks, explanations, fuzzing and link-prediction helpers.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "magnn/error.hpp"
#include "magnn/explain.hpp"
#include "magnn/fuzz.hpp"
#include "magnn/linkpred.hpp"
#include "magnn/report.hpp"
#include "magnn/semantics.hpp"
#include "magnn/soundness.hpp"

using namespace magnn;

namespace {

constexpr int kOk = 0;
constexpr int kViolations = 1;
constexpr int kUsage = 2;

struct Config {
  std::string model_path;
  std::string signature_path;
  std::string dataset_path;
  std::string output_path;
  std::string format = "plain";
  std::string direction;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const Config& cfg, const std::string& text) {
  if (cfg.output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output_path, std::ios::binary);
  if (!out) throw Error("cannot write '" + cfg.output_path + "'");
  out << text;
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw PreconditionError(std::string("missing required option ") + flag);
}

MagnnModel load(const Config& cfg) {
  require(cfg.model_path, "--model");
  MagnnModel m = load_model(read_file(cfg.model_path));
  if (!cfg.direction.empty()) m.direction = parse_direction(cfg.direction);
  if (!cfg.signature_path.empty() && !(parse_signature(read_file(cfg.signature_path)) == m.signature))
    throw SignatureMismatch("signature file does not match the model signature");
  return m;
}

Dataset load_dataset(const Config& cfg, const Signature* sig) {
  require(cfg.dataset_path, "--dataset");
  return parse_dataset(read_file(cfg.dataset_path), sig);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean-aggregation GNN rule extraction and explanation"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--model", cfg.model_path, "Weight file (JSON)");
  app.add_option("--signature", cfg.signature_path, "Signature file");
  app.add_option("--dataset", cfg.dataset_path, "Fact file");
  app.add_option("--output", cfg.output_path, "Write the result here instead of stdout");
  app.add_option("--format", cfg.format, "plain or json")->check(CLI::IsMember({"plain", "json"}));
  app.add_option("--direction", cfg.direction, "Override the aggregation direction")
      ->check(CLI::IsMember({"out", "in"}));
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* infer = app.add_subcommand("infer", "Write T_M(dataset)");
  infer->fallthrough();

  std::size_t max_body = std::numeric_limits<std::size_t>::max();
  bool no_prune = false;
  auto* extract = app.add_subcommand("extract", "Enumerate all minimal sound restricted rules");
  extract->add_option("--max-body", max_body, "Maximum body size (default: all)");
  extract->add_flag("--no-prune", no_prune, "Check every candidate against the model");
  extract->fallthrough();

  std::string rules_path;
  auto* check = app.add_subcommand("check", "Decide soundness of restricted and ELUQ rules");
  check->add_option("--rules", rules_path, "Rule file")->required();
  check->fallthrough();

  std::string fact_text, targets_path;
  bool all_true_positives = false, relax = false;
  std::size_t prune_budget = 0;
  auto* explain_cmd = app.add_subcommand("explain", "Sound explanation of predicted facts");
  explain_cmd->add_option("--fact", fact_text, "Predicted unary fact, e.g. U(a)");
  explain_cmd->add_flag("--all-true-positives", all_true_positives,
                        "Explain every target fact the model predicts");
  explain_cmd->add_option("--targets", targets_path, "Target facts for --all-true-positives");
  explain_cmd->add_option("--prune-budget", prune_budget, "Candidate removals tried when pruning");
  explain_cmd->add_flag("--relax", relax, "Relax MAXDEG bounds after building the concept");
  explain_cmd->fallthrough();

  FuzzOptions fuzz_opts;
  auto* fuzz = app.add_subcommand("fuzz", "Search random datasets for soundness violations");
  fuzz->add_option("--rules", rules_path, "Rule file")->required();
  fuzz->add_option("--trials", fuzz_opts.trials, "Number of random datasets");
  fuzz->add_option("--max-constants", fuzz_opts.max_constants, "Constants per dataset (upper bound)");
  fuzz->add_option("--density", fuzz_opts.density, "Fact probability")->check(CLI::Range(0.0, 1.0));
  fuzz->fallthrough();

  bool all_pairs = false;
  auto* lp_encode_cmd = app.add_subcommand("lp-encode", "Pair-node encoding of a binary dataset");
  lp_encode_cmd->add_flag("--all-pairs", all_pairs, "Materialise every ordered pair of constants");
  lp_encode_cmd->fallthrough();

  auto* lp_unfold = app.add_subcommand("lp-unfold", "Unfold restricted pair rules into binary rules");
  lp_unfold->add_option("--rules", rules_path, "Restricted rules over the pair signature");
  lp_unfold->fallthrough();

  auto* validate = app.add_subcommand("validate", "Report weight-file invariant violations");
  validate->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const Format format = parse_format(cfg.format);

    if (*validate) {
      require(cfg.model_path, "--model");
      auto diags = validate_model(load_model(read_file(cfg.model_path)));
      write_output(cfg, format_diagnostics(diags, format));
      return diags.empty() ? kOk : kUsage;
    }

    if (*lp_encode_cmd) {
      require(cfg.signature_path, "--signature");
      Signature source = parse_signature(read_file(cfg.signature_path));
      auto enc = lp_encode(load_dataset(cfg, &source), source, all_pairs);
      write_output(cfg, format_dataset(enc.data, format));
      return kOk;
    }

    if (*lp_unfold) {
      std::vector<RestrictedRule> rules;
      if (!rules_path.empty()) {
        for (const auto& r : parse_rules(read_file(rules_path))) {
          auto rr = as_restricted(r);
          if (!rr) throw FragmentViolation("not a restricted rule: " + to_text(r));
          rules.push_back(*rr);
        }
      } else {
        MagnnModel m = load(cfg);
        require_monotone(m);
        rules = enumerate_sound(m, m.signature.dim() + m.signature.colours(), {true, cfg.jobs}).minimal_sound;
      }
      std::string out;
      for (const auto& r : rules) out += to_text(unfold_rule(r)) + "\n";
      write_output(cfg, out);
      return kOk;
    }

    MagnnModel m = load(cfg);
    auto diags = validate_model(m);

    if (*infer) {
      if (!diags.empty()) {
        std::cerr << format_diagnostics(diags, Format::plain);
        return kUsage;
      }
      write_output(cfg, format_dataset(apply(m, load_dataset(cfg, &m.signature)), format));
      return kOk;
    }

    require_monotone(m);

    if (*extract) {
      if (max_body == std::numeric_limits<std::size_t>::max())
        max_body = m.signature.dim() + m.signature.colours();
      auto report = enumerate_sound(m, max_body, {!no_prune, cfg.jobs});
      if (report.warning) std::cerr << "warning: " << *report.warning << "\n";
      write_output(cfg, format_extraction(report, format));
      return kOk;
    }

    if (*check) {
      std::vector<EluqVerdict> verdicts;
      for (const auto& r : parse_rules(read_file(rules_path))) verdicts.push_back(check_eluq(m, r));
      write_output(cfg, format_verdicts(verdicts, format));
      return kOk;
    }

    if (*explain_cmd) {
      Dataset d = load_dataset(cfg, &m.signature);
      ExplainOptions opts;
      opts.prune_budget = prune_budget;
      opts.relax_bounds = relax;
      std::vector<Explanation> out;
      if (all_true_positives) {
        require(targets_path, "--targets");
        Dataset predicted = apply(m, d);
        for (const auto& f : parse_dataset(read_file(targets_path), &m.signature))
          if (!f.is_binary() && predicted.contains(f)) out.push_back(explain(m, d, f, opts));
      } else {
        require(fact_text, "--fact");
        out.push_back(explain(m, d, parse_fact(fact_text), opts));
      }
      write_output(cfg, format_explanations(out, format));
      return kOk;
    }

    if (*fuzz) {
      fuzz_opts.seed = cfg.seed;
      fuzz_opts.jobs = cfg.jobs;
      auto rules = parse_rules(read_file(rules_path));
      auto reports = fuzz_soundness(m, rules, fuzz_opts);
      write_output(cfg, format_fuzz(reports, format));
      for (const auto& r : reports)
        if (r.violation_count > 0) return kViolations;
      return kOk;
    }
  } catch (const FragmentViolation& e) {
    std::cerr << "fragment violation: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
