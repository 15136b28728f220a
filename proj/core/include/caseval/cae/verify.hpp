#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "caseval/cae/types.hpp"

namespace caseval::cae {

/// Product of the three decomposition factors.
double compose_risk(const RiskDecomposition& d);

/// A named result another module produced: numeric metrics plus the
/// assumptions that module could not discharge.
struct EvidenceResult {
    std::map<std::string, double> metrics;
    std::vector<std::string> unmet_assumptions;
};

/// Evidence bindings resolve against this store by result id.
using EvidenceStore = std::map<std::string, EvidenceResult>;

/// Parses "metric <op> number-or-name" with op in {<=, <, >=, >, ==, !=}.
/// Returns std::nullopt on malformed input.
std::optional<Predicate> parse_predicate(const std::string& text);

/// Bottom-up verdicts for every node reachable from the case root.
/// Evidence leaves: satisfied iff the predicate holds on the bound result
/// and the producing module reported no unmet assumptions; a binding whose
/// result is absent from the store leaves the leaf (and its ancestors)
/// unresolved. Attestation leaves are satisfied iff attested. Internal
/// nodes fold their children through their combinator with three-valued
/// logic. Throws std::runtime_error (naming the node) on a malformed
/// predicate, an unknown child id, or an unknown metric in a present result.
std::map<std::string, Verdict> verify(const Case& safety_case,
                                      const EvidenceStore& store);

struct SupportingOnlyViolation {
    std::string claim_id;
    std::string detail;
};

/// Alignment arguments may support but never carry a safety case: reports
/// every claim on the risk path (the top claim and every claim reached
/// through decomposition arguments) whose entire argument support is
/// alignment-typed.
std::vector<SupportingOnlyViolation> check_supporting_only(const Case& safety_case);

}  // namespace caseval::cae
