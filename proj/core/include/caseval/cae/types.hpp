#pragma once

#include <map>
#include <string>
#include <vector>

namespace caseval::cae {

/// The three-factor risk decomposition: P(can scheme), P(will | can),
/// P(unacceptable outcome | will). Lifecycle risk is their product.
struct RiskDecomposition {
    double p_can_scheme = 0.0;
    double p_will_given_can = 0.0;
    double p_harm_given_will = 0.0;
};

enum class Status { satisfied, refuted, unresolved };

std::string_view to_string(Status s);

struct Verdict {
    Status status = Status::unresolved;
    std::vector<std::string> supporting;         // evidence ids
    std::vector<std::string> unmet_assumptions;  // assumption ids
    std::string notes;
};

enum class NodeKind { claim, argument, evidence };

enum class ArgumentType {
    scheming_inability,
    harm_inability,
    harm_control,
    alignment_eval,
    alignment_training,
    decomposition,
    plumbing,
};

std::string_view to_string(NodeKind k);
std::string_view to_string(ArgumentType t);

enum class Combinator { all, any };

/// Acceptance predicate attached to a bound evidence node, e.g.
/// "analytic_success <= 0.0075" or "present_count == 0". The right-hand
/// side may name a numeric constant from the case block.
struct Predicate {
    std::string metric;
    enum class Op { le, lt, ge, gt, eq, ne } op = Op::le;
    double rhs = 0.0;
    std::string rhs_name;  // non-empty when the rhs is a named constant
};

struct CaseNode {
    std::string id;
    NodeKind kind = NodeKind::claim;
    std::string text;
    ArgumentType argument_type = ArgumentType::plumbing;  // argument nodes
    std::vector<std::string> children;
    Combinator combinator = Combinator::all;
    std::string scope;  // optional annotation on decomposition arguments

    // Evidence payload: either a result binding with a predicate, or a
    // recorded assumption attestation.
    std::string binding;
    std::string predicate_text;
    std::string assumption;
    bool attested = false;
    bool is_attestation = false;
};

/// A safety case: node table plus the root claim and run configuration
/// pulled from the `case` block.
struct Case {
    std::string id;
    std::string root;
    std::map<std::string, CaseNode> nodes;
    std::map<std::string, double> constants;  // named numeric case entries
    bool has_risk_decomposition = false;
    RiskDecomposition risk;
};

}  // namespace caseval::cae
