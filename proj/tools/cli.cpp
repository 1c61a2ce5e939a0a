/* Copyright 2026 The Assure Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cli.hpp"

#include <filesystem>
#include <iomanip>
#include <locale>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "assure/cae_dsl.hpp"
#include "assure/campaign.hpp"
#include "assure/digest.hpp"
#include "assure/error.hpp"
#include "assure/risk_ledger.hpp"
#include "assure/scenario_io.hpp"

namespace assure::cli {
namespace {

namespace fs = std::filesystem;

/// Parse failure already reported to the user.
struct Reported {
  int code;
};

std::string load(const std::string& path) { return read_file(path); }

CaeTree load_tree(const std::string& path, std::ostream& err) {
  auto result = parse(load(path));
  if (auto* errors = std::get_if<std::vector<ParseError>>(&result)) {
    for (const auto& e : *errors) err << path << ":" << format(e) << "\n";
    throw Reported{kUsage};
  }
  return std::get<CaeTree>(std::move(result));
}

RiskRegistry load_registry(const std::string& path, std::ostream& err) {
  auto result = parse_registry(load(path));
  if (auto* errors = std::get_if<std::vector<ParseError>>(&result)) {
    for (const auto& e : *errors) err << path << ":" << format(e) << "\n";
    throw Reported{kUsage};
  }
  return std::get<RiskRegistry>(std::move(result));
}

EndorsementPolicy load_policy(const std::string& path) { return parse_policy(load(path)); }

std::string fixed(double v, int digits = 6) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
  } else {
    write_file(out_path, text);
  }
}

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) s += sep;
    s += items[i];
  }
  return s;
}

fs::path base_dir(const std::string& file) {
  auto dir = fs::path(file).parent_path();
  return dir.empty() ? fs::path(".") : dir;
}

// ---- cae -----------------------------------------------------------------

int cae_check(const std::string& file, std::ostream& out, std::ostream& err) {
  const auto doc = read_cae(load(file));
  if (!doc.errors.empty() || !doc.tree) {
    for (const auto& e : doc.errors) err << file << ":" << format(e) << "\n";
    return kUsage;
  }
  const auto violations = check_well_formed(*doc.tree);
  for (const auto& v : violations) {
    SourceSpan span;
    if (auto it = doc.spans.find(v.node_id); it != doc.spans.end()) span = it->second;
    out << file << ":" << span.line << ":" << span.column << ": " << to_string(v.rule) << " " << v.node_id << ": "
        << v.detail << "\n";
  }
  out << violations.size() << " violations; root status: " << to_string(node_status(*doc.tree, doc.tree->root()))
      << "\n";
  return violations.empty() ? kOk : kFindings;
}

int cae_status(const std::string& file, const std::string& node, std::ostream& out, std::ostream& err) {
  const auto tree = load_tree(file, err);
  const std::string from = node.empty() ? tree.root() : node;
  if (!tree.contains(from)) throw Error(ErrorCode::UnknownNode, from);
  for (const auto& id : tree.preorder(from)) {
    const auto& n = tree.at(id);
    if (is_evidence(n)) continue;
    out << id << ": " << to_string(node_status(tree, id)) << "\n";
  }
  out << "assumptions: " << join(assumptions_of(tree, from), ", ") << "\n";
  return kOk;
}

int cae_render(const std::string& file, const std::string& out_path, std::ostream& out, std::ostream& err) {
  emit(to_dot(load_tree(file, err)), out_path, out);
  return kOk;
}

// ---- risk ----------------------------------------------------------------

int risk_coverage(const std::string& registry_file, const std::string& cae_file, std::ostream& out,
                  std::ostream& err) {
  const auto registry = load_registry(registry_file, err);
  const auto tree = load_tree(cae_file, err);

  // Linked reports must still exist and hash to the recorded digest.
  std::set<std::string, std::less<>> unusable;
  std::map<std::string, std::string> reasons;
  for (const auto& [id, node] : tree.nodes()) {
    const auto* ev = std::get_if<EvidenceNode>(&node);
    if (!ev || !ev->reference) continue;
    const fs::path ref(*ev->reference);
    const auto path = ref.is_absolute() ? ref : base_dir(cae_file) / ref;
    std::error_code ec;
    if (!fs::is_regular_file(path, ec)) {
      unusable.insert(id);
      reasons[id] = "report missing: " + *ev->reference;
    } else if (ev->digest && sha256_hex(read_file(path.string())) != *ev->digest) {
      unusable.insert(id);
      reasons[id] = "digest mismatch: " + *ev->reference;
    }
  }

  const auto report = coverage_check(registry, tree, unusable);
  for (const auto& r : report.risks) {
    out << r.risk_id << " " << to_string(r.bucket);
    if (!r.missing_evidence.empty()) {
      std::vector<std::string> parts;
      for (const auto& id : r.missing_evidence) {
        auto it = reasons.find(id);
        parts.push_back(it == reasons.end() ? id + " (not in tree)" : id + " (" + it->second + ")");
      }
      out << ": " << join(parts, ", ");
    }
    out << "\n";
  }
  out << "covered: " << report.counts.at(Coverage::Covered)
      << ", accepted: " << report.counts.at(Coverage::AcceptedAsIs)
      << ", uncovered: " << report.counts.at(Coverage::Uncovered)
      << ", dangling: " << report.counts.at(Coverage::Dangling) << "\n";
  for (const auto& [category, count] : category_profile(registry)) {
    out << "  " << to_string(category) << ": " << count << "\n";
  }
  return report.clean() ? kOk : kFindings;
}

// ---- sim -----------------------------------------------------------------

int sim_run(const std::string& file, const std::optional<std::uint64_t>& seed, const std::string& out_path,
            std::ostream& out) {
  auto config = scenario_from_text(load(file));
  if (seed) config.seed = *seed;
  const auto report = sim::run_scenario(config);
  const auto text = report_to_text(report);
  std::int64_t total = 0;
  for (const auto& [event, count] : report.feared_event_counts) total += count;
  if (out_path.empty()) {
    out << text;
  } else {
    write_file(out_path, text);
    for (const auto& [event, count] : report.feared_event_counts) out << to_string(event) << ": " << count << "\n";
    if (report.liveness_lost_at) out << "liveness lost at step " << *report.liveness_lost_at << "\n";
  }
  return total == 0 ? kOk : kFindings;
}

// ---- policy --------------------------------------------------------------

std::string format_sets(const std::vector<SignerSet>& sets) {
  std::vector<std::string> parts;
  for (const auto& s : sets) parts.push_back("{" + join(s, ",") + "}");
  return join(parts, " ");
}

int policy_tolerance(const std::string& file, const std::string& out_path, std::ostream& out) {
  const auto analysis = analyze_tolerance(load_policy(file));
  out << "policy: " << analysis.policy << "\n";
  out << "fraud: " << analysis.fraud_tolerance << ", censorship: " << analysis.censorship_tolerance << "\n";
  out << "minimal satisfying sets: " << format_sets(analysis.min_satisfying) << "\n";
  out << "minimal blocking sets: " << format_sets(analysis.min_blocking) << "\n";
  if (!out_path.empty()) {
    const auto emitted = emit_evidence_report(analysis, out_path);
    out << "report: " << out_path << " sha256 " << emitted.digest << "\n";
  }
  return kOk;
}

struct CampaignArgs {
  std::string policy_file;
  std::string scenario_file;
  std::int64_t runs = 10000;
  std::uint64_t seed = 0;
  double p_fraud = 0.0;
  double p_censor = 0.0;
  double p_crash = 0.0;
  std::string out_path;
  std::string link;
};

int policy_campaign(const CampaignArgs& args, std::ostream& out, std::ostream& err) {
  const auto policy = load_policy(args.policy_file);
  sim::ScenarioConfig base;
  if (args.scenario_file.empty()) {
    base = default_campaign_scenario(policy);
  } else {
    base = scenario_from_text(load(args.scenario_file));
    base.policy = policy;
  }
  const FaultProbabilities probabilities{{Fault::Fraudulent, args.p_fraud},
                                         {Fault::Censoring, args.p_censor},
                                         {Fault::Crashed, args.p_crash}};

  std::string cae_file;
  std::string evidence_id;
  if (!args.link.empty()) {
    const auto colon = args.link.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == args.link.size()) {
      err << "--link expects <cae-file>:<evidence-id>\n";
      return kUsage;
    }
    if (args.out_path.empty()) {
      err << "--link requires --out\n";
      return kUsage;
    }
    cae_file = args.link.substr(0, colon);
    evidence_id = args.link.substr(colon + 1);
  }

  const auto report = monte_carlo_campaign(base, probabilities, args.runs, args.seed);
  out << "policy: " << report.policy << "\n";
  out << "runs: " << report.n_runs << ", seed: " << report.seed << "\n";
  out << "fraud_success_rate: " << fixed(report.fraud_success_rate) << " +/- "
      << fixed(report.fraud_ci95_halfwidth) << "\n";
  out << "censorship_success_rate: " << fixed(report.censorship_success_rate) << " +/- "
      << fixed(report.censorship_ci95_halfwidth) << "\n";
  if (args.out_path.empty()) {
    out << to_text(report);
    return kOk;
  }

  const auto emitted = emit_evidence_report(report, args.out_path);
  out << "report: " << args.out_path << " sha256 " << emitted.digest << "\n";
  if (!cae_file.empty()) {
    const auto tree = load_tree(cae_file, err);
    std::error_code ec;
    auto reference = fs::weakly_canonical(args.out_path, ec)
                         .lexically_proximate(fs::weakly_canonical(base_dir(cae_file), ec));
    const auto linked = link_evidence(tree, evidence_id, reference.generic_string(), emitted.digest);
    write_file(cae_file, serialize(linked));
    out << "linked " << evidence_id << " in " << cae_file << "\n";
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Assurance cases, risk coverage and fault simulation for permissioned ledgers", "assure"};
  app.require_subcommand(1);

  std::string file;
  std::string file2;
  std::string out_path;
  std::string node;
  std::string format = "dot";
  std::uint64_t seed = 0;
  CampaignArgs campaign;
  int code = kOk;

  auto* cae = app.add_subcommand("cae", "Check, render and evaluate assurance cases");
  cae->require_subcommand(1);
  auto* cae_check_cmd = cae->add_subcommand("check", "Report well-formedness violations and the root status");
  cae_check_cmd->add_option("file", file, ".cae file")->required();
  auto* cae_render_cmd = cae->add_subcommand("render", "Render the tree as a Graphviz digraph");
  cae_render_cmd->add_option("file", file, ".cae file")->required();
  cae_render_cmd->add_option("--out", out_path, "Output path (default: stdout)");
  cae_render_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"dot"}));
  auto* cae_status_cmd = cae->add_subcommand("status", "Print the status of every claim and argument");
  cae_status_cmd->add_option("file", file, ".cae file")->required();
  cae_status_cmd->add_option("--node", node, "Subtree root (default: the tree root)");

  auto* risk = app.add_subcommand("risk", "Risk registry checks");
  risk->require_subcommand(1);
  auto* coverage_cmd = risk->add_subcommand("coverage", "Check that every risk is mitigated or accepted");
  coverage_cmd->add_option("registry", file, ".risk registry file")->required();
  coverage_cmd->add_option("cae", file2, ".cae file holding the evidence")->required();

  auto* sim_cmd = app.add_subcommand("sim", "Execute-Order-Validate simulation");
  sim_cmd->require_subcommand(1);
  auto* sim_run_cmd = sim_cmd->add_subcommand("run", "Run a scenario and report feared events");
  sim_run_cmd->add_option("scenario", file, "Scenario JSON file")->required();
  auto* sim_seed = sim_run_cmd->add_option("--seed", seed, "Override the scenario seed");
  sim_run_cmd->add_option("--out", out_path, "Report path (default: stdout)");

  auto* policy = app.add_subcommand("policy", "Endorsement policy analysis");
  policy->require_subcommand(1);
  auto* tolerance_cmd = policy->add_subcommand("tolerance", "Exact fraud and censorship tolerance");
  tolerance_cmd->add_option("policy", file, "Policy file")->required();
  tolerance_cmd->add_option("--out", out_path, "Also write the analysis as an evidence report");
  auto* campaign_cmd = policy->add_subcommand("campaign", "Monte Carlo fault-injection campaign");
  campaign_cmd->add_option("policy", campaign.policy_file, "Policy file")->required();
  campaign_cmd->add_option("--runs", campaign.runs, "Number of runs")->check(CLI::PositiveNumber);
  campaign_cmd->add_option("--seed", campaign.seed, "Campaign seed");
  campaign_cmd->add_option("--p-fraud", campaign.p_fraud, "Probability that an endorser is Fraudulent");
  campaign_cmd->add_option("--p-censor", campaign.p_censor, "Probability that an endorser is Censoring");
  campaign_cmd->add_option("--p-crash", campaign.p_crash, "Probability that an endorser is Crashed");
  campaign_cmd->add_option("--scenario", campaign.scenario_file, "Base scenario (default: one valid and one invalid tx)");
  campaign_cmd->add_option("--out", campaign.out_path, "Evidence report path");
  campaign_cmd->add_option("--link", campaign.link, "Link the report into <cae-file>:<evidence-id>");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (cae_check_cmd->parsed()) code = cae_check(file, out, err);
    else if (cae_render_cmd->parsed()) code = cae_render(file, out_path, out, err);
    else if (cae_status_cmd->parsed()) code = cae_status(file, node, out, err);
    else if (coverage_cmd->parsed()) code = risk_coverage(file, file2, out, err);
    else if (sim_run_cmd->parsed())
      code = sim_run(file, sim_seed->count() ? std::optional<std::uint64_t>(seed) : std::nullopt, out_path, out);
    else if (tolerance_cmd->parsed()) code = policy_tolerance(file, out_path, out);
    else if (campaign_cmd->parsed()) code = policy_campaign(campaign, out, err);
  } catch (const Reported& r) {
    return r.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::IoFailure ? kIo : kUsage;
  }
  return code;
}

}  // namespace assure::cli
