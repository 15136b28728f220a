#include "caseval/cae/verify.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <stdexcept>

namespace caseval::cae {

std::string_view to_string(Status s) {
    switch (s) {
        case Status::satisfied: return "satisfied";
        case Status::refuted: return "refuted";
        case Status::unresolved: return "unresolved";
    }
    return "?";
}

std::string_view to_string(NodeKind k) {
    switch (k) {
        case NodeKind::claim: return "claim";
        case NodeKind::argument: return "argument";
        case NodeKind::evidence: return "evidence";
    }
    return "?";
}

std::string_view to_string(ArgumentType t) {
    switch (t) {
        case ArgumentType::scheming_inability: return "scheming_inability";
        case ArgumentType::harm_inability: return "harm_inability";
        case ArgumentType::harm_control: return "harm_control";
        case ArgumentType::alignment_eval: return "alignment_eval";
        case ArgumentType::alignment_training: return "alignment_training";
        case ArgumentType::decomposition: return "decomposition";
        case ArgumentType::plumbing: return "plumbing";
    }
    return "?";
}

double compose_risk(const RiskDecomposition& d) {
    return d.p_can_scheme * d.p_will_given_can * d.p_harm_given_will;
}

std::optional<Predicate> parse_predicate(const std::string& text) {
    // metric, operator, right-hand side; whitespace separated.
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && text[pos] == ' ') ++pos;
        if (pos >= text.size()) break;
        std::size_t end = pos;
        while (end < text.size() && text[end] != ' ') ++end;
        parts.push_back(text.substr(pos, end - pos));
        pos = end;
    }
    if (parts.size() != 3) return std::nullopt;

    Predicate p;
    p.metric = parts[0];
    if (parts[1] == "<=") p.op = Predicate::Op::le;
    else if (parts[1] == "<") p.op = Predicate::Op::lt;
    else if (parts[1] == ">=") p.op = Predicate::Op::ge;
    else if (parts[1] == ">") p.op = Predicate::Op::gt;
    else if (parts[1] == "==") p.op = Predicate::Op::eq;
    else if (parts[1] == "!=") p.op = Predicate::Op::ne;
    else return std::nullopt;

    const std::string& rhs = parts[2];
    double v = 0.0;
    const auto rc = std::from_chars(rhs.data(), rhs.data() + rhs.size(), v);
    if (rc.ec == std::errc{} && rc.ptr == rhs.data() + rhs.size()) {
        p.rhs = v;
    } else {
        p.rhs_name = rhs;  // named constant, resolved against the case block
    }
    return p;
}

namespace {

bool predicate_holds(const Predicate& p, double lhs, double rhs) {
    switch (p.op) {
        case Predicate::Op::le: return lhs <= rhs;
        case Predicate::Op::lt: return lhs < rhs;
        case Predicate::Op::ge: return lhs >= rhs;
        case Predicate::Op::gt: return lhs > rhs;
        case Predicate::Op::eq: return lhs == rhs;
        case Predicate::Op::ne: return lhs != rhs;
    }
    return false;
}

Status combine(Combinator combinator, const std::vector<Status>& children) {
    if (children.empty()) return Status::unresolved;
    std::size_t satisfied = 0, refuted = 0;
    for (Status s : children) {
        if (s == Status::satisfied) ++satisfied;
        if (s == Status::refuted) ++refuted;
    }
    if (combinator == Combinator::all) {
        if (refuted > 0) return Status::refuted;
        if (satisfied == children.size()) return Status::satisfied;
        return Status::unresolved;
    }
    if (satisfied > 0) return Status::satisfied;
    if (refuted == children.size()) return Status::refuted;
    return Status::unresolved;
}

}  // namespace

std::map<std::string, Verdict> verify(const Case& safety_case,
                                      const EvidenceStore& store) {
    std::map<std::string, Verdict> verdicts;

    std::function<const Verdict&(const std::string&)> visit =
        [&](const std::string& id) -> const Verdict& {
        const auto done = verdicts.find(id);
        if (done != verdicts.end()) return done->second;

        const auto node_it = safety_case.nodes.find(id);
        if (node_it == safety_case.nodes.end()) {
            throw std::runtime_error("verify: unknown node '" + id + "'");
        }
        const CaseNode& node = node_it->second;
        Verdict verdict;

        if (node.kind == NodeKind::evidence) {
            if (node.is_attestation) {
                if (node.attested) {
                    verdict.status = Status::satisfied;
                    verdict.notes = "assumption '" + node.assumption + "' attested";
                } else {
                    verdict.status = Status::unresolved;
                    verdict.unmet_assumptions.push_back(node.assumption);
                    verdict.notes =
                        "assumption '" + node.assumption + "' not attested";
                }
            } else {
                const auto pred = parse_predicate(node.predicate_text);
                if (!pred) {
                    throw std::runtime_error("verify: evidence '" + id +
                                             "' has a malformed predicate: " +
                                             node.predicate_text);
                }
                double rhs = pred->rhs;
                if (!pred->rhs_name.empty()) {
                    const auto c = safety_case.constants.find(pred->rhs_name);
                    if (c == safety_case.constants.end()) {
                        throw std::runtime_error(
                            "verify: evidence '" + id + "' references unknown "
                            "constant '" + pred->rhs_name + "'");
                    }
                    rhs = c->second;
                }
                const auto result = store.find(node.binding);
                if (result == store.end()) {
                    verdict.status = Status::unresolved;
                    verdict.notes = "no result bound for '" + node.binding + "'";
                } else {
                    const auto metric = result->second.metrics.find(pred->metric);
                    if (metric == result->second.metrics.end()) {
                        throw std::runtime_error(
                            "verify: evidence '" + id + "' asks result '" +
                            node.binding + "' for unknown metric '" + pred->metric +
                            "'");
                    }
                    const bool holds =
                        predicate_holds(*pred, metric->second, rhs);
                    verdict.unmet_assumptions = result->second.unmet_assumptions;
                    if (!holds) {
                        verdict.status = Status::refuted;
                    } else if (!verdict.unmet_assumptions.empty()) {
                        verdict.status = Status::unresolved;
                        verdict.notes = "predicate holds but assumptions are unmet";
                    } else {
                        verdict.status = Status::satisfied;
                        verdict.supporting.push_back(id);
                    }
                }
            }
            return verdicts.emplace(id, std::move(verdict)).first->second;
        }

        std::vector<Status> child_statuses;
        for (const std::string& child : node.children) {
            const Verdict& cv = visit(child);
            child_statuses.push_back(cv.status);
            if (cv.status == Status::satisfied) {
                verdict.supporting.insert(verdict.supporting.end(),
                                          cv.supporting.begin(),
                                          cv.supporting.end());
            }
            for (const std::string& a : cv.unmet_assumptions) {
                if (std::find(verdict.unmet_assumptions.begin(),
                              verdict.unmet_assumptions.end(),
                              a) == verdict.unmet_assumptions.end()) {
                    verdict.unmet_assumptions.push_back(a);
                }
            }
        }
        verdict.status = combine(node.combinator, child_statuses);
        if (node.children.empty()) {
            verdict.notes = "no supporting children";
        }
        if (verdict.status == Status::satisfied) {
            verdict.unmet_assumptions.clear();
        }
        return verdicts.emplace(id, std::move(verdict)).first->second;
    };

    visit(safety_case.root);
    return verdicts;
}

std::vector<SupportingOnlyViolation> check_supporting_only(
    const Case& safety_case) {
    std::vector<SupportingOnlyViolation> violations;

    const auto is_alignment = [](ArgumentType t) {
        return t == ArgumentType::alignment_eval ||
               t == ArgumentType::alignment_training;
    };

    // Claims on the risk path: the top claim plus claims reached through
    // decomposition arguments (the per-threat-model claims).
    std::vector<std::string> pending{safety_case.root};
    std::vector<std::string> seen;
    while (!pending.empty()) {
        const std::string id = pending.back();
        pending.pop_back();
        if (std::find(seen.begin(), seen.end(), id) != seen.end()) continue;
        seen.push_back(id);

        const auto it = safety_case.nodes.find(id);
        if (it == safety_case.nodes.end() || it->second.kind != NodeKind::claim) {
            continue;
        }
        const CaseNode& claim = it->second;

        std::size_t arguments = 0;
        std::size_t alignment_arguments = 0;
        for (const std::string& child : claim.children) {
            const auto child_it = safety_case.nodes.find(child);
            if (child_it == safety_case.nodes.end()) continue;
            const CaseNode& arg = child_it->second;
            if (arg.kind != NodeKind::argument) continue;
            ++arguments;
            if (is_alignment(arg.argument_type)) ++alignment_arguments;
            if (arg.argument_type == ArgumentType::decomposition) {
                for (const std::string& grandchild : arg.children) {
                    pending.push_back(grandchild);
                }
            }
        }
        if (arguments > 0 && arguments == alignment_arguments) {
            violations.push_back(
                {claim.id,
                 "claim rests entirely on alignment arguments, which may only "
                 "support a safety case"});
        }
    }
    return violations;
}

}  // namespace caseval::cae
