#include "caseval/scdl/ast.hpp"

#include <algorithm>

namespace caseval::scdl {

std::string_view to_string(BlockKind kind) {
    switch (kind) {
        case BlockKind::capability: return "capability";
        case BlockKind::task: return "task";
        case BlockKind::scaling_series: return "scaling_series";
        case BlockKind::monitor: return "monitor";
        case BlockKind::protocol: return "protocol";
        case BlockKind::policy: return "policy";
        case BlockKind::honeypot_set: return "honeypot_set";
        case BlockKind::behavior_model: return "behavior_model";
        case BlockKind::probe_spec: return "probe_spec";
        case BlockKind::process_script: return "process_script";
        case BlockKind::claim: return "claim";
        case BlockKind::argument: return "argument";
        case BlockKind::evidence: return "evidence";
        case BlockKind::case_: return "case";
    }
    return "?";
}

std::optional<BlockKind> block_kind_from(std::string_view word) {
    static constexpr BlockKind kinds[] = {
        BlockKind::capability,    BlockKind::task,     BlockKind::scaling_series,
        BlockKind::monitor,       BlockKind::protocol, BlockKind::policy,
        BlockKind::honeypot_set,  BlockKind::behavior_model,
        BlockKind::probe_spec,    BlockKind::process_script,
        BlockKind::claim,         BlockKind::argument, BlockKind::evidence,
        BlockKind::case_,
    };
    for (BlockKind k : kinds) {
        if (to_string(k) == word) return k;
    }
    return std::nullopt;
}

Value Value::make_number(double v, SourceSpan s) {
    Value out;
    out.kind = Kind::number;
    out.number = v;
    out.span = s;
    return out;
}

Value Value::make_string(std::string v, SourceSpan s) {
    Value out;
    out.kind = Kind::string;
    out.text = std::move(v);
    out.span = s;
    return out;
}

Value Value::make_ident(std::string v, SourceSpan s) {
    Value out;
    out.kind = Kind::ident;
    out.text = std::move(v);
    out.span = s;
    return out;
}

Value Value::make_list(std::vector<Value> v, SourceSpan s) {
    Value out;
    out.kind = Kind::list;
    out.items = std::move(v);
    out.span = s;
    return out;
}

std::optional<bool> Value::as_bool() const {
    if (kind != Kind::ident) return std::nullopt;
    if (text == "true") return true;
    if (text == "false") return false;
    return std::nullopt;
}

bool Value::structurally_equal(const Value& other) const {
    if (kind != other.kind) return false;
    switch (kind) {
        case Kind::number: return number == other.number;
        case Kind::string:
        case Kind::ident: return text == other.text;
        case Kind::list:
            if (items.size() != other.items.size()) return false;
            for (std::size_t i = 0; i < items.size(); ++i) {
                if (!items[i].structurally_equal(other.items[i])) return false;
            }
            return true;
    }
    return false;
}

const Value* Block::find(std::string_view key) const {
    for (const Entry& e : entries) {
        if (e.key == key) return &e.value;
    }
    return nullptr;
}

bool Block::structurally_equal(const Block& other) const {
    if (kind != other.kind || id != other.id) return false;
    if (entries.size() != other.entries.size()) return false;
    // Entry order is not significant; compare by sorted key.
    auto sorted_keys = [](const Block& b) {
        std::vector<const Entry*> keys;
        keys.reserve(b.entries.size());
        for (const Entry& e : b.entries) keys.push_back(&e);
        std::sort(keys.begin(), keys.end(),
                  [](const Entry* a, const Entry* b2) { return a->key < b2->key; });
        return keys;
    };
    const auto lhs = sorted_keys(*this);
    const auto rhs = sorted_keys(other);
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        if (lhs[i]->key != rhs[i]->key) return false;
        if (!lhs[i]->value.structurally_equal(rhs[i]->value)) return false;
    }
    return true;
}

const Block* Document::find(BlockKind kind, std::string_view id) const {
    for (const Block& b : blocks) {
        if (b.kind == kind && b.id == id) return &b;
    }
    return nullptr;
}

std::vector<const Block*> Document::of_kind(BlockKind kind) const {
    std::vector<const Block*> out;
    for (const Block& b : blocks) {
        if (b.kind == kind) out.push_back(&b);
    }
    return out;
}

bool Document::structurally_equal(const Document& other) const {
    if (blocks.size() != other.blocks.size()) return false;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (!blocks[i].structurally_equal(other.blocks[i])) return false;
    }
    return true;
}

std::string_view to_string(ParseError::Category cat) {
    switch (cat) {
        case ParseError::Category::lex: return "lex";
        case ParseError::Category::syntax: return "syntax";
        case ParseError::Category::semantic: return "semantic";
    }
    return "?";
}

std::string format_error(const ParseError& err) {
    return std::to_string(err.span.line) + ":" + std::to_string(err.span.column) +
           ": " + std::string(to_string(err.category)) + ": " + err.message;
}

}  // namespace caseval::scdl
