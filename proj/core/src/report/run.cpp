#include "caseval/report/run.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "caseval/cae/load.hpp"
#include "caseval/scdl/parser.hpp"
#include "caseval/scdl/serialize.hpp"
#include "internal.hpp"

namespace caseval::report {

namespace {

using internal::EvidenceBundle;
using internal::json;

constexpr int kExitSatisfied = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitUnresolved = 2;
constexpr int kExitInputError = 3;
constexpr int kExitUsage = 4;

json base_report(const std::string& command, const RunOptions& options) {
    json report;
    report["version"] = "1";
    report["command"] = command;
    if (options.stamp) {
        const auto now = std::chrono::system_clock::now().time_since_epoch();
        report["stamp_unix_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
    }
    return report;
}

void finalize(RunResult& result, const json& report, const RunOptions& options) {
    result.json = report.dump(2) + "\n";
    std::string payload;
    switch (options.format) {
        case Format::json: payload = result.json; break;
        case Format::text: payload = result.text; break;
        case Format::both: payload = result.text + result.json; break;
    }
    if (!options.out_path.empty()) {
        std::ofstream out(options.out_path, std::ios::binary);
        if (!out) {
            result.diagnostics.push_back("cannot write output file: " +
                                         options.out_path);
            result.exit_code = kExitUsage;
            return;
        }
        out << payload;  // the report goes to the file; stdout stays quiet
    } else {
        result.output = std::move(payload);
    }
}

struct GatherSettings {
    std::uint64_t seed = 42;
    std::uint64_t trials = 100000;
};

GatherSettings settings_for(const scdl::Document& doc, const RunOptions& options) {
    GatherSettings settings;
    // The first case block's seed/trials act as document defaults.
    for (const scdl::Block* b : doc.of_kind(scdl::BlockKind::case_)) {
        if (const scdl::Value* seed = b->find("seed"); seed && seed->is_number()) {
            settings.seed = static_cast<std::uint64_t>(seed->number);
        }
        if (const scdl::Value* trials = b->find("trials");
            trials && trials->is_number()) {
            settings.trials = static_cast<std::uint64_t>(trials->number);
        }
        break;
    }
    if (options.seed) settings.seed = *options.seed;
    if (options.trials) settings.trials = *options.trials;
    return settings;
}

int with_inputs(const RunOptions& options, RunResult& result,
                internal::MergedInput& merged) {
    if (options.inputs.empty()) {
        result.diagnostics.push_back("no input files given");
        return kExitUsage;
    }
    merged = internal::load_inputs(options.inputs);
    if (!merged.ok) {
        result.diagnostics = merged.diagnostics;
        return kExitInputError;
    }
    return kExitSatisfied;
}

}  // namespace

RunResult run_verify(const RunOptions& options) {
    RunResult result;
    internal::MergedInput merged;
    if (int rc = with_inputs(options, result, merged); rc != kExitSatisfied) {
        result.exit_code = rc;
        return result;
    }

    std::vector<cae::Case> cases = cae::load(merged.doc);
    if (cases.empty()) {
        result.diagnostics.push_back("verify: inputs contain no case block");
        result.exit_code = kExitInputError;
        return result;
    }

    const GatherSettings settings = settings_for(merged.doc, options);
    EvidenceBundle bundle;
    try {
        internal::gather_capability(merged.doc, bundle);
        internal::gather_control(merged.doc, settings.seed, settings.trials, bundle);
        internal::gather_alignment(merged.doc, settings.seed, bundle);
        internal::gather_probes(merged.doc, bundle);
        internal::gather_process(merged.doc, bundle);
        internal::gather_attestations(merged.doc, bundle);
    } catch (const std::exception& e) {
        result.diagnostics.push_back(std::string("verify: ") + e.what());
        result.exit_code = kExitInputError;
        return result;
    }

    json report = base_report("verify", options);
    if (!bundle.capability_report.empty()) {
        report["capability_report"] = bundle.capability_report;
    }
    if (!bundle.control_simulation.empty()) {
        report["control_simulation"] = bundle.control_simulation;
    }
    if (!bundle.alignment_eval.empty()) {
        report["alignment_eval"] = bundle.alignment_eval;
    }
    if (!bundle.probe_lab.empty()) report["probe_lab"] = bundle.probe_lab;
    if (!bundle.process.empty()) report["process"] = bundle.process;

    int exit_code = kExitSatisfied;
    json verdict_section;
    std::string outline;
    for (cae::Case& safety_case : cases) {
        if (options.risk) {
            safety_case.constants["acceptable_risk"] = *options.risk;
        }

        std::map<std::string, cae::Verdict> verdicts;
        try {
            verdicts = cae::verify(safety_case, bundle.store);
        } catch (const std::exception& e) {
            result.diagnostics.push_back(std::string("verify: ") + e.what());
            result.exit_code = kExitInputError;
            return result;
        }

        json case_entry;
        for (const auto& [id, verdict] : verdicts) {
            case_entry["nodes"][id] = internal::verdict_json(verdict);
            for (const std::string& a : verdict.unmet_assumptions) {
                bundle.ledger.push_back({a, "case_graph", "unmet"});
            }
        }
        const cae::Verdict& top = verdicts.at(safety_case.root);
        case_entry["top"] = {{"claim", safety_case.root},
                             {"status", std::string(to_string(top.status))}};

        const auto violations = cae::check_supporting_only(safety_case);
        json violation_list = json::array();
        for (const cae::SupportingOnlyViolation& v : violations) {
            violation_list.push_back({{"claim", v.claim_id}, {"detail", v.detail}});
        }
        case_entry["supporting_only_violations"] = violation_list;

        if (safety_case.has_risk_decomposition) {
            case_entry["risk"] = {
                {"p_can_scheme", safety_case.risk.p_can_scheme},
                {"p_will_given_can", safety_case.risk.p_will_given_can},
                {"p_harm_given_will", safety_case.risk.p_harm_given_will},
                {"lifecycle_risk", cae::compose_risk(safety_case.risk)}};
        }
        verdict_section[safety_case.id] = std::move(case_entry);

        outline += "case " + safety_case.id + " [" +
                   std::string(to_string(top.status)) + "]\n";
        outline += internal::render_outline(safety_case, verdicts, bundle.store);
        if (!violations.empty()) {
            outline += "supporting-only violations:\n";
            for (const cae::SupportingOnlyViolation& v : violations) {
                outline += "  claim " + v.claim_id + ": " + v.detail + "\n";
            }
        }
        outline += "\n";

        // Worst verdict across cases drives the exit code.
        const int code = top.status == cae::Status::satisfied   ? kExitSatisfied
                         : top.status == cae::Status::refuted   ? kExitRefuted
                                                                : kExitUnresolved;
        if (code == kExitRefuted) {
            exit_code = kExitRefuted;
        } else if (code == kExitUnresolved && exit_code != kExitRefuted) {
            exit_code = kExitUnresolved;
        }
    }
    report["verdicts"] = std::move(verdict_section);
    report["assumption_ledger"] = internal::ledger_json(bundle.ledger);

    result.text = outline;
    result.exit_code = exit_code;
    finalize(result, report, options);
    return result;
}

RunResult run_simulate(const RunOptions& options) {
    RunResult result;
    internal::MergedInput merged;
    if (int rc = with_inputs(options, result, merged); rc != kExitSatisfied) {
        result.exit_code = rc;
        return result;
    }
    if (merged.doc.of_kind(scdl::BlockKind::protocol).empty() ||
        merged.doc.of_kind(scdl::BlockKind::policy).empty()) {
        result.diagnostics.push_back(
            "simulate: inputs need at least one protocol and one policy block");
        result.exit_code = kExitInputError;
        return result;
    }

    const GatherSettings settings = settings_for(merged.doc, options);
    EvidenceBundle bundle;
    try {
        internal::gather_control(merged.doc, settings.seed, settings.trials, bundle);
    } catch (const std::exception& e) {
        result.diagnostics.push_back(std::string("simulate: ") + e.what());
        result.exit_code = kExitInputError;
        return result;
    }

    json report = base_report("simulate", options);
    report["control_simulation"] = bundle.control_simulation;
    report["assumption_ledger"] = internal::ledger_json(bundle.ledger);

    std::string text;
    for (const auto& [key, entry] : bundle.control_simulation.items()) {
        text += key + "\n";
        text += "  analytic:    undetected " +
                internal::number_text(entry["analytic"]["undetected_rate"].get<double>()) +
                ", success " +
                internal::number_text(entry["analytic"]["success_rate"].get<double>()) + "\n";
        text += "  monte carlo: undetected " +
                internal::number_text(entry["monte_carlo"]["undetected_rate"].get<double>()) +
                " (se " + internal::number_text(entry["monte_carlo"]["undetected_se"].get<double>()) +
                "), success " +
                internal::number_text(entry["monte_carlo"]["success_rate"].get<double>()) +
                " (se " + internal::number_text(entry["monte_carlo"]["success_se"].get<double>()) +
                ")\n";
        if (entry.contains("warnings")) {
            for (const auto& w : entry["warnings"]) {
                text += "  warning: " + w.get<std::string>() + "\n";
            }
        }
    }
    result.text = text;
    finalize(result, report, options);
    return result;
}

RunResult run_probes(const RunOptions& options) {
    RunResult result;
    internal::MergedInput merged;
    if (int rc = with_inputs(options, result, merged); rc != kExitSatisfied) {
        result.exit_code = rc;
        return result;
    }
    if (merged.doc.of_kind(scdl::BlockKind::probe_spec).empty()) {
        result.diagnostics.push_back("probes: inputs contain no probe_spec block");
        result.exit_code = kExitInputError;
        return result;
    }

    EvidenceBundle bundle;
    try {
        internal::gather_probes(merged.doc, bundle);
    } catch (const std::exception& e) {
        result.diagnostics.push_back(std::string("probes: ") + e.what());
        result.exit_code = kExitInputError;
        return result;
    }

    json report = base_report("probes", options);
    report["probe_lab"] = bundle.probe_lab;
    report["assumption_ledger"] = internal::ledger_json(bundle.ledger);

    std::string text;
    for (const auto& [key, entry] : bundle.probe_lab.items()) {
        text += "probe " + key + ": fpr " + internal::number_text(entry["fpr"].get<double>()) +
                ", fnr " + internal::number_text(entry["fnr"].get<double>());
        if (entry.contains("auc")) {
            text += ", auc " + internal::number_text(entry["auc"].get<double>());
        }
        text += "\n";
    }
    result.text = text;
    finalize(result, report, options);
    return result;
}

RunResult run_process(const RunOptions& options) {
    RunResult result;
    internal::MergedInput merged;
    if (int rc = with_inputs(options, result, merged); rc != kExitSatisfied) {
        result.exit_code = rc;
        return result;
    }
    if (merged.doc.of_kind(scdl::BlockKind::process_script).empty()) {
        result.diagnostics.push_back(
            "process: inputs contain no process_script block");
        result.exit_code = kExitInputError;
        return result;
    }

    EvidenceBundle bundle;
    try {
        internal::gather_process(merged.doc, bundle);
    } catch (const std::exception& e) {
        result.diagnostics.push_back(std::string("process: ") + e.what());
        result.exit_code = kExitInputError;
        return result;
    }

    json report = base_report("process", options);
    report["process"] = bundle.process;

    int exit_code = kExitSatisfied;
    for (const auto& [key, entry] : bundle.process.items()) {
        if (!entry["ok"].get<bool>()) {
            result.diagnostics.push_back("process " + key + ": " +
                                         entry["error"].get<std::string>());
            exit_code = kExitInputError;
        }
    }

    std::string text;
    for (const std::string& transcript : bundle.process_transcripts) {
        text += transcript + "\n";
    }
    result.text = text;
    result.exit_code = exit_code;
    finalize(result, report, options);
    return result;
}

RunResult run_fmt(const RunOptions& options) {
    RunResult result;
    if (options.inputs.empty()) {
        result.diagnostics.push_back("no input files given");
        result.exit_code = kExitUsage;
        return result;
    }
    for (const std::string& path : options.inputs) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            result.diagnostics.push_back(path + ": cannot open file");
            result.exit_code = kExitInputError;
            return result;
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        const std::string original = buffer.str();
        const scdl::ParseResult parsed = scdl::parse(original);
        if (!parsed.ok()) {
            for (const scdl::ParseError& e : parsed.errors) {
                result.diagnostics.push_back(path + ":" + scdl::format_error(e));
            }
            result.exit_code = kExitInputError;
            return result;
        }
        const std::string canonical = scdl::serialize(*parsed.document);
        if (canonical != original) {
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            if (!out) {
                result.diagnostics.push_back(path + ": cannot rewrite file");
                result.exit_code = kExitInputError;
                return result;
            }
            out << canonical;
            result.text += "rewrote " + path + "\n";
        } else {
            result.text += "already canonical: " + path + "\n";
        }
    }
    return result;
}

}  // namespace caseval::report
