#include "internal.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "caseval/alignment/honeypots.hpp"
#include "caseval/control/analytic.hpp"
#include "caseval/control/simulate.hpp"
#include "caseval/probe/probe.hpp"
#include "caseval/probe/synthetic.hpp"
#include "caseval/process/engine.hpp"
#include "caseval/process/load.hpp"
#include "caseval/scdl/parser.hpp"
#include "caseval/scdl/validate.hpp"
#include "caseval/stats.hpp"

namespace caseval::report::internal {

MergedInput load_inputs(const std::vector<std::string>& paths) {
    MergedInput merged;

    for (const std::string& path : paths) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            merged.diagnostics.push_back(path + ": cannot open file");
            continue;
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        const scdl::ParseResult parsed = scdl::parse(buffer.str());
        if (!parsed.ok()) {
            for (const scdl::ParseError& e : parsed.errors) {
                merged.diagnostics.push_back(path + ":" + scdl::format_error(e));
            }
            continue;
        }
        for (const scdl::Block& b : parsed.document->blocks) {
            if (merged.doc.find(b.kind, b.id)) {
                merged.diagnostics.push_back(
                    path + ": duplicate " + std::string(scdl::to_string(b.kind)) +
                    " identifier '" + b.id + "' across inputs");
                continue;
            }
            merged.doc.blocks.push_back(b);
        }
    }
    if (!merged.diagnostics.empty()) return merged;

    for (const scdl::ParseError& e : scdl::validate(merged.doc)) {
        merged.diagnostics.push_back(scdl::format_error(e));
    }
    merged.ok = merged.diagnostics.empty();
    return merged;
}

std::string number_text(double v) { return json(v).dump(); }

void gather_capability(const scdl::Document& doc, EvidenceBundle& bundle) {
    const capability::Inputs inputs = capability::load(doc);
    if (inputs.capabilities.empty()) return;

    const capability::CapabilityReport report =
        capability::compute_report(inputs.capabilities, inputs.tasks);

    json section;
    for (const auto& [task, p] : report.per_task) section["per_task"][task] = p;
    for (const auto& [cap, p] : report.direct) section["direct"][cap] = p;
    for (const auto& [cap, p] : report.propagated) section["propagated"][cap] = p;
    for (const auto& [cap, present] : report.present) {
        section["present"][cap] = present;
    }
    section["unmet_assumptions"] = json::array();
    for (const auto& [task, assumption] : report.unmet_assumptions) {
        section["unmet_assumptions"].push_back(
            {{"task", task}, {"assumption", assumption}});
        bundle.ledger.push_back({assumption, "capability_eval", "unmet"});
    }
    for (const capability::TaskResult& task : inputs.tasks) {
        for (const auto& [flag, held] : task.elicitation.assumption_flags) {
            if (held) bundle.ledger.push_back({flag, "capability_eval", "met"});
        }
    }

    for (const capability::Category category :
         {capability::Category::scheming_reasoning, capability::Category::harm,
          capability::Category::oversight_evasion, capability::Category::other}) {
        std::uint64_t count = 0, present_count = 0;
        double max_direct = 0.0;
        for (const capability::CapabilityNode& cap : inputs.capabilities) {
            if (cap.category != category) continue;
            ++count;
            if (report.present.at(cap.id)) ++present_count;
            max_direct = std::max(max_direct, report.direct.at(cap.id));
        }
        if (count == 0) continue;

        const cae::Verdict verdict = capability::inability_verdict(
            report, inputs.capabilities, inputs.tasks, category);
        const std::string name(capability::to_string(category));
        section["verdicts"][name] = verdict_json(verdict);

        cae::EvidenceResult result;
        result.metrics["capability_count"] = static_cast<double>(count);
        result.metrics["present_count"] = static_cast<double>(present_count);
        result.metrics["absent_count"] = static_cast<double>(count - present_count);
        result.metrics["max_direct"] = max_direct;
        std::set<std::string> unmet;
        for (const std::string& a : verdict.unmet_assumptions) unmet.insert(a);
        result.unmet_assumptions.assign(unmet.begin(), unmet.end());
        bundle.store["capability." + name] = std::move(result);
    }

    // Scaling-trend checks ride along with the capability evidence.
    const auto series_list = inputs.scaling_series;
    for (const auto& [id, series] : series_list) {
        const std::vector<std::size_t> flags = capability::check_scaling_trend(series);
        json flagged = json::array();
        for (std::size_t i : flags) flagged.push_back(i);
        section["scaling_trends"][id] = {{"flagged_indices", flagged},
                                         {"tolerance", series.tolerance}};
        cae::EvidenceResult result;
        result.metrics["flag_count"] = static_cast<double>(flags.size());
        bundle.store["scaling." + id] = std::move(result);
        if (!flags.empty()) {
            bundle.ledger.push_back(
                {"smooth_capability_scaling", "capability_eval", "unmet"});
        }
    }

    bundle.capability_report = std::move(section);
}

void gather_control(const scdl::Document& doc, std::uint64_t seed,
                    std::uint64_t trials, EvidenceBundle& bundle) {
    const control::Inputs inputs = control::load(doc);
    if (inputs.pipelines.empty() || inputs.policies.empty()) return;

    json section;
    for (const control::Pipeline& pipeline : inputs.pipelines) {
        for (const control::AttackPolicy& policy : inputs.policies) {
            const control::PipelineAnalysis analysis =
                control::analyze(pipeline, policy);
            control::SimConfig config;
            config.n_trials = trials;
            config.seed = seed;
            const control::SimOutcome mc =
                control::simulate(pipeline, policy, config);

            json entry;
            entry["analytic"] = {{"undetected_rate", analysis.undetected_rate},
                                 {"success_rate", analysis.success_rate}};
            for (const control::StageRate& r : analysis.stage_rates) {
                entry["analytic"]["stage_fnr"][r.stage_id] = r.fnr;
            }
            for (const std::string& w : analysis.warnings) {
                entry["warnings"].push_back(w);
            }
            json caught = json::object();
            for (const auto& [stage, count] : mc.caught_by_stage) {
                caught[stage] = count;
            }
            entry["monte_carlo"] = {{"n_trials", mc.n_trials},
                                    {"seed", seed},
                                    {"attempts", mc.attempts},
                                    {"caught_by_stage", caught},
                                    {"undetected", mc.undetected},
                                    {"succeeded", mc.succeeded},
                                    {"undetected_rate", mc.undetected_rate},
                                    {"undetected_se", mc.undetected_se},
                                    {"success_rate", mc.success_rate},
                                    {"success_se", mc.success_se}};
            const std::string key = pipeline.id + "." + policy.id;
            section[key] = std::move(entry);

            cae::EvidenceResult result;
            result.metrics["analytic_undetected"] = analysis.undetected_rate;
            result.metrics["analytic_success"] = analysis.success_rate;
            result.metrics["mc_undetected"] = mc.undetected_rate;
            result.metrics["mc_success"] = mc.success_rate;
            result.metrics["mc_success_se"] = mc.success_se;
            bundle.store["sim." + key] = std::move(result);
        }
    }
    bundle.ledger.push_back(
        {"execution_success_independent_of_detection", "control_sim", "modeled"});
    bundle.control_simulation = std::move(section);
}

namespace {

json outcome_json(const alignment::HoneypotOutcome& outcome) {
    json fps = json::array();
    for (const std::string& id : outcome.false_positive_explanations) {
        fps.push_back(id);
    }
    return {{"n", outcome.n},
            {"misaligned_count", outcome.misaligned_count},
            {"misaligned_rate", outcome.misaligned_rate},
            {"misaligned_wilson",
             {{"lower", outcome.misaligned_interval.lower},
              {"upper", outcome.misaligned_interval.upper}}},
            {"probe_fired_count", outcome.probe_fired_count},
            {"probe_rate", outcome.probe_rate},
            {"probe_wilson",
             {{"lower", outcome.probe_interval.lower},
              {"upper", outcome.probe_interval.upper}}},
            {"false_positive_explanations", fps},
            {"unexplained_probe_fires", outcome.unexplained_probe_fires}};
}

}  // namespace

void gather_alignment(const scdl::Document& doc, std::uint64_t seed,
                      EvidenceBundle& bundle) {
    const alignment::Inputs inputs = alignment::load(doc);
    if (inputs.suites.empty() || inputs.models.empty()) return;

    // Attested booleans for the alignment-argument assumption keys, when the
    // case records them.
    std::map<std::string, bool> attested;
    for (const scdl::Block* b : doc.of_kind(scdl::BlockKind::evidence)) {
        const scdl::Value* assumption = b->find("assumption");
        const scdl::Value* held = b->find("attested");
        if (assumption && held && held->as_bool()) {
            attested[assumption->text] = *held->as_bool();
        }
    }

    json section;
    for (const alignment::SuiteSpec& suite : inputs.suites) {
        for (const alignment::BehaviorModel& model : inputs.models) {
            const alignment::HoneypotOutcome initial =
                alignment::run_honeypots(model, suite.honeypots, seed);

            json entry;
            entry["initial"] = outcome_json(initial);

            bool contaminated = false;
            for (const alignment::Honeypot& hp : suite.honeypots) {
                if (hp.mentions_alignment_faking_concepts) contaminated = true;
            }
            alignment::HoneypotOutcome final_outcome = initial;
            if (contaminated && suite.decontaminate_and_rerun) {
                const alignment::HoneypotSuite clean =
                    alignment::decontaminate(suite.honeypots);
                final_outcome = alignment::run_honeypots(model, clean, seed);
                entry["decontaminated_rerun"] = outcome_json(final_outcome);
            }

            if (model.rare_failure_rate) {
                const alignment::RareFailurePower power =
                    alignment::rare_failure_power(*model.rare_failure_rate,
                                                  suite.honeypots.size(), 1000000);
                entry["rare_failure"] = {
                    {"rate", *model.rare_failure_rate},
                    {"n_eval", suite.honeypots.size()},
                    {"n_deploy", 1000000},
                    {"p_caught_in_eval", power.p_caught_in_eval},
                    {"p_acts_in_deployment", power.p_acts_in_deployment}};
                bundle.ledger.push_back(
                    {"no_rare_failure_strategy", "alignment_eval", "unverified"});
            }

            // Alignment-via-evaluation verdict when the case attests the
            // assumption keys and the suite states its claimed bound. The
            // probe result itself settles not_alignment_faking.
            const bool keys_attested = attested.count("coverage") &&
                                       attested.count("selection_pressure") &&
                                       attested.count("no_modification");
            if (suite.max_misaligned_rate && keys_attested) {
                std::map<std::string, bool> assumptions{
                    {"coverage", attested.at("coverage")},
                    {"selection_pressure", attested.at("selection_pressure")},
                    {"no_modification", attested.at("no_modification")},
                    {"not_alignment_faking",
                     final_outcome.unexplained_probe_fires == 0},
                };
                const cae::Verdict verdict = alignment::alignment_verdict(
                    final_outcome, assumptions, *suite.max_misaligned_rate);
                entry["verdict"] = verdict_json(verdict);
                for (const auto& [key, held] : assumptions) {
                    bundle.ledger.push_back(
                        {key, "alignment_eval", held ? "attested" : "unmet"});
                }
            }

            const std::string key = suite.id + "." + model.id;
            section[key] = std::move(entry);

            cae::EvidenceResult result;
            result.metrics["n"] = static_cast<double>(final_outcome.n);
            result.metrics["misaligned_count"] =
                static_cast<double>(final_outcome.misaligned_count);
            result.metrics["misaligned_rate"] = final_outcome.misaligned_rate;
            result.metrics["misaligned_upper"] =
                final_outcome.misaligned_interval.upper;
            result.metrics["probe_rate"] = final_outcome.probe_rate;
            result.metrics["probe_rate_initial"] = initial.probe_rate;
            result.metrics["unexplained_probe_fires"] =
                static_cast<double>(final_outcome.unexplained_probe_fires);
            if (final_outcome.unexplained_probe_fires > 0) {
                result.unmet_assumptions.push_back("not_alignment_faking");
            }
            bundle.store["honeypots." + key] = std::move(result);
        }
    }
    bundle.alignment_eval = std::move(section);
}

void gather_probes(const scdl::Document& doc, EvidenceBundle& bundle) {
    const std::vector<probe::ProbeSpec> specs = probe::load(doc);
    if (specs.empty()) return;

    json section;
    for (const probe::ProbeSpec& spec : specs) {
        const probe::Dataset train = probe::generate(spec.generator);
        probe::SyntheticGeneratorSpec eval_spec = spec.generator;
        eval_spec.seed = spec.generator.seed + 1;  // held-out evaluation data
        const probe::Dataset eval_data = probe::generate(eval_spec);

        const probe::Dataset scheming =
            probe::filter_label(train, probe::Label::scheming);
        const probe::Dataset honest = probe::filter_label(train, probe::Label::honest);
        const probe::ProbeModel model =
            probe::build_probe(scheming, honest, spec.threshold);
        const probe::ProbeEvaluation eval = probe::evaluate_probe(model, eval_data);

        json entry;
        entry["threshold"] = model.threshold;
        entry["fpr"] = eval.fpr;
        entry["fnr"] = eval.fnr;
        entry["accuracy_honest"] = 1.0 - eval.fpr;
        entry["accuracy_scheming"] = 1.0 - eval.fnr;
        if (eval.auc) entry["auc"] = *eval.auc;
        entry["overall_positive_rate"] = eval.overall_positive_rate;
        for (const auto& [category, rate] : eval.per_category_positive_rate) {
            entry["per_category_positive_rate"][category] = rate.rate;
        }
        if (eval.per_category_positive_rate.size() >= 2) {
            const probe::PatternScanResult scan =
                probe::pattern_scan(eval, eval.overall_positive_rate);
            entry["pattern_scan"] = {{"flagged", scan.flagged},
                                     {"category", scan.category},
                                     {"concentration", scan.concentration}};
        }
        entry["generalization_assumption"] = "unverified";
        section[spec.id] = std::move(entry);

        cae::EvidenceResult result;
        result.metrics["fpr"] = eval.fpr;
        result.metrics["fnr"] = eval.fnr;
        result.metrics["accuracy_honest"] = 1.0 - eval.fpr;
        result.metrics["accuracy_scheming"] = 1.0 - eval.fnr;
        if (eval.auc) result.metrics["auc"] = *eval.auc;
        bundle.store["probes." + spec.id] = std::move(result);
    }
    bundle.ledger.push_back(
        {"probe_direction_generalization", "probe_lab", "unverified"});
    bundle.probe_lab = std::move(section);
}

void gather_process(const scdl::Document& doc, EvidenceBundle& bundle) {
    const std::vector<process::ProcessScript> scripts = process::load(doc);
    if (scripts.empty()) return;

    json section;
    for (const process::ProcessScript& script : scripts) {
        const process::ReplayResult result = process::replay(script);

        json transitions = json::array();
        for (const process::LogEntry& entry : result.state.history) {
            transitions.push_back({{"index", entry.index},
                                   {"round", entry.round},
                                   {"from", std::string(to_string(entry.from))},
                                   {"event", entry.event.summary()},
                                   {"to", std::string(to_string(entry.to))}});
        }
        json entry;
        entry["ok"] = result.ok;
        if (!result.ok) {
            entry["error"] = result.error;
            entry["error_index"] = result.error_index;
        }
        entry["final_phase"] = std::string(to_string(result.state.phase));
        entry["rounds"] = result.state.round;
        entry["deployed"] = result.state.deployed;
        entry["transitions"] = std::move(transitions);
        // Proposals are handled one at a time; concurrent in-flight
        // proposals are out of scope for this engine.
        entry["serialized_proposals"] = true;
        section[script.id] = std::move(entry);

        bundle.process_transcripts.push_back("process " + script.id + "\n" +
                                             process::transcript(result.state));

        cae::EvidenceResult evidence;
        evidence.metrics["ok"] = result.ok ? 1.0 : 0.0;
        evidence.metrics["rounds"] = static_cast<double>(result.state.round);
        evidence.metrics["deployed"] = result.state.deployed ? 1.0 : 0.0;
        evidence.metrics["deployable"] =
            result.state.phase == process::Phase::Deployable ? 1.0 : 0.0;
        bundle.store["process." + script.id] = std::move(evidence);
    }
    bundle.process = std::move(section);
}

void gather_attestations(const scdl::Document& doc, EvidenceBundle& bundle) {
    for (const scdl::Block* b : doc.of_kind(scdl::BlockKind::evidence)) {
        const scdl::Value* assumption = b->find("assumption");
        const scdl::Value* attested = b->find("attested");
        if (!assumption || !attested) continue;
        const auto held = attested->as_bool();
        bundle.ledger.push_back({assumption->text, "case",
                                 held.value_or(false) ? "attested" : "unmet"});
    }
}

json ledger_json(const std::vector<LedgerEntry>& ledger) {
    // Deduplicate; order by (assumption, module, status) for determinism.
    std::set<std::tuple<std::string, std::string, std::string>> seen;
    json out = json::array();
    for (const LedgerEntry& entry : ledger) {
        seen.insert({entry.assumption, entry.module, entry.status});
    }
    for (const auto& [assumption, module, status] : seen) {
        out.push_back({{"assumption", assumption},
                       {"module", module},
                       {"status", status}});
    }
    return out;
}

json verdict_json(const cae::Verdict& verdict) {
    json unmet = json::array();
    for (const std::string& a : verdict.unmet_assumptions) unmet.push_back(a);
    json supporting = json::array();
    for (const std::string& s : verdict.supporting) supporting.push_back(s);
    return {{"status", std::string(to_string(verdict.status))},
            {"supporting", supporting},
            {"unmet_assumptions", unmet},
            {"notes", verdict.notes}};
}

namespace {

const char* glyph(cae::Status status) {
    switch (status) {
        case cae::Status::satisfied: return "[ok]";
        case cae::Status::refuted: return "[XX]";
        case cae::Status::unresolved: return "[??]";
    }
    return "[??]";
}

}  // namespace

std::string render_outline(const cae::Case& safety_case,
                           const std::map<std::string, cae::Verdict>& verdicts,
                           const cae::EvidenceStore& store) {
    std::string out;
    std::function<void(const std::string&, int)> walk = [&](const std::string& id,
                                                            int depth) {
        const auto node_it = safety_case.nodes.find(id);
        if (node_it == safety_case.nodes.end()) return;
        const cae::CaseNode& node = node_it->second;
        const auto verdict_it = verdicts.find(id);
        const cae::Status status = verdict_it != verdicts.end()
                                       ? verdict_it->second.status
                                       : cae::Status::unresolved;

        out.append(static_cast<std::size_t>(depth) * 2, ' ');
        out += glyph(status);
        out += ' ';
        out += to_string(node.kind);
        if (node.kind == cae::NodeKind::argument) {
            out += '(';
            out += to_string(node.argument_type);
            out += ')';
        }
        out += ' ';
        out += node.id;
        if (!node.text.empty()) {
            out += ": ";
            out += node.text;
        }
        if (node.kind == cae::NodeKind::evidence && !node.is_attestation) {
            out += " [";
            out += node.binding;
            out += " ~ ";
            out += node.predicate_text;
            const auto result = store.find(node.binding);
            if (result != store.end()) {
                const auto pred = cae::parse_predicate(node.predicate_text);
                if (pred) {
                    const auto metric = result->second.metrics.find(pred->metric);
                    if (metric != result->second.metrics.end()) {
                        out += "; ";
                        out += pred->metric;
                        out += " = ";
                        out += number_text(metric->second);
                    }
                }
            }
            out += ']';
        }
        if (!node.scope.empty()) {
            out += " (scope: ";
            out += node.scope;
            out += ')';
        }
        out += '\n';
        for (const std::string& child : node.children) walk(child, depth + 1);
    };
    walk(safety_case.root, 0);
    return out;
}

}  // namespace caseval::report::internal
