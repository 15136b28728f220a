#pragma once

// Internal report assembly shared by the command drivers. Uses the vendored
// nlohmann/json; kept out of public headers so installed consumers do not
// need it.

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

#include "caseval/alignment/load.hpp"
#include "caseval/alignment/types.hpp"
#include "caseval/capability/eval.hpp"
#include "caseval/capability/load.hpp"
#include "caseval/cae/types.hpp"
#include "caseval/cae/verify.hpp"
#include "caseval/control/load.hpp"
#include "caseval/control/types.hpp"
#include "caseval/probe/load.hpp"
#include "caseval/process/types.hpp"
#include "caseval/scdl/ast.hpp"

namespace caseval::report::internal {

using json = nlohmann::json;

struct LedgerEntry {
    std::string assumption;
    std::string module;
    std::string status;  // met | unmet | attested | unverified | modeled
};

/// Everything the evidence-producing modules computed for one run.
struct EvidenceBundle {
    cae::EvidenceStore store;
    json capability_report = json::object();
    json control_simulation = json::object();
    json alignment_eval = json::object();
    json probe_lab = json::object();
    json process = json::object();
    std::vector<LedgerEntry> ledger;
    std::vector<std::string> process_transcripts;  // human-readable
};

struct MergedInput {
    scdl::Document doc;
    std::vector<std::string> diagnostics;
    bool ok = false;
};

/// Parses and validates every input file into one merged document.
/// Diagnostics carry "path:line:col: category: message".
MergedInput load_inputs(const std::vector<std::string>& paths);

/// Runs capability evaluation over the document (when capability blocks
/// exist) and records results under "capability.<category>".
void gather_capability(const scdl::Document& doc, EvidenceBundle& bundle);

/// Runs analytic + Monte Carlo control evaluation for every protocol/policy
/// pair; results land under "sim.<protocol>.<policy>".
void gather_control(const scdl::Document& doc, std::uint64_t seed,
                    std::uint64_t trials, EvidenceBundle& bundle);

/// Runs every honeypot suite against every behavior model, with the §-style
/// decontaminate-and-rerun pass; results land under
/// "honeypots.<suite>.<model>".
void gather_alignment(const scdl::Document& doc, std::uint64_t seed,
                      EvidenceBundle& bundle);

/// Builds and evaluates probes for every probe_spec; results land under
/// "probes.<spec>".
void gather_probes(const scdl::Document& doc, EvidenceBundle& bundle);

/// Replays every process script; results land under "process.<script>".
void gather_process(const scdl::Document& doc, EvidenceBundle& bundle);

/// Attestation evidence nodes feed the assumption ledger.
void gather_attestations(const scdl::Document& doc, EvidenceBundle& bundle);

json ledger_json(const std::vector<LedgerEntry>& ledger);

json verdict_json(const cae::Verdict& verdict);

/// One number, formatted exactly as the JSON report will print it.
std::string number_text(double v);

/// Renders the case outline with one claim per line and verdict glyphs.
std::string render_outline(const cae::Case& safety_case,
                           const std::map<std::string, cae::Verdict>& verdicts,
                           const cae::EvidenceStore& store);

}  // namespace caseval::report::internal
