#include "caseval/cae/load.hpp"

#include "../load_util.hpp"

namespace caseval::cae {

using detail::get_bool;
using detail::get_ident_list;
using detail::get_number;
using detail::get_text;
using detail::load_error;

namespace {

ArgumentType argument_type_from(const scdl::Block& block, const std::string& word) {
    if (word == "scheming_inability") return ArgumentType::scheming_inability;
    if (word == "harm_inability") return ArgumentType::harm_inability;
    if (word == "harm_control") return ArgumentType::harm_control;
    if (word == "alignment_eval") return ArgumentType::alignment_eval;
    if (word == "alignment_training") return ArgumentType::alignment_training;
    if (word == "decomposition") return ArgumentType::decomposition;
    if (word == "plumbing") return ArgumentType::plumbing;
    throw load_error(block, "unknown argument type '" + word + "'");
}

CaseNode load_node(const scdl::Block& block) {
    CaseNode node;
    node.id = block.id;
    node.text = get_text(block, "text");
    node.children = get_ident_list(block, "children");
    node.combinator = get_text(block, "combinator", "all") == "any"
                          ? Combinator::any
                          : Combinator::all;
    switch (block.kind) {
        case scdl::BlockKind::claim:
            node.kind = NodeKind::claim;
            break;
        case scdl::BlockKind::argument:
            node.kind = NodeKind::argument;
            node.argument_type = argument_type_from(block, get_text(block, "type"));
            node.scope = get_text(block, "scope");
            break;
        case scdl::BlockKind::evidence:
            node.kind = NodeKind::evidence;
            node.binding = get_text(block, "binding");
            node.predicate_text = get_text(block, "predicate");
            if (block.find("assumption")) {
                node.is_attestation = true;
                node.assumption = get_text(block, "assumption");
                node.attested = get_bool(block, "attested", false);
            }
            break;
        default:
            throw load_error(block, "not a CAE node");
    }
    return node;
}

}  // namespace

std::vector<Case> load(const scdl::Document& doc) {
    std::map<std::string, CaseNode> nodes;
    for (const scdl::Block& b : doc.blocks) {
        if (b.kind == scdl::BlockKind::claim || b.kind == scdl::BlockKind::argument ||
            b.kind == scdl::BlockKind::evidence) {
            CaseNode node = load_node(b);
            nodes[node.id] = std::move(node);
        }
    }

    std::vector<Case> cases;
    for (const scdl::Block* b : doc.of_kind(scdl::BlockKind::case_)) {
        Case c;
        c.id = b->id;
        c.root = get_text(*b, "root");
        c.nodes = nodes;
        for (const scdl::Entry& e : b->entries) {
            if (e.value.is_number()) c.constants[e.key] = e.value.number;
        }
        if (b->find("p_can_scheme") || b->find("p_will_given_can") ||
            b->find("p_harm_given_will")) {
            c.has_risk_decomposition = true;
            c.risk.p_can_scheme = get_number(*b, "p_can_scheme", 1.0);
            c.risk.p_will_given_can = get_number(*b, "p_will_given_can", 1.0);
            c.risk.p_harm_given_will = get_number(*b, "p_harm_given_will", 1.0);
        }
        cases.push_back(std::move(c));
    }
    return cases;
}

}  // namespace caseval::cae
