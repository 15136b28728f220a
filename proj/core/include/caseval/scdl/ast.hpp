#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace caseval::scdl {

struct SourceSpan {
    int line = 1;     // 1-based
    int column = 1;   // 1-based
    int length = 0;
};

enum class BlockKind {
    capability,
    task,
    scaling_series,
    monitor,
    protocol,
    policy,
    honeypot_set,
    behavior_model,
    probe_spec,
    process_script,
    claim,
    argument,
    evidence,
    case_,
};

std::string_view to_string(BlockKind kind);
std::optional<BlockKind> block_kind_from(std::string_view word);

/// A parsed value: number, quoted string, bare identifier, or list.
/// Percent literals are collapsed to their decimal value during parsing.
struct Value {
    enum class Kind { number, string, ident, list };

    Kind kind = Kind::number;
    double number = 0.0;
    std::string text;          // string or ident payload
    std::vector<Value> items;  // list payload
    SourceSpan span;

    static Value make_number(double v, SourceSpan s = {});
    static Value make_string(std::string v, SourceSpan s = {});
    static Value make_ident(std::string v, SourceSpan s = {});
    static Value make_list(std::vector<Value> v, SourceSpan s = {});

    bool is_number() const { return kind == Kind::number; }
    bool is_string() const { return kind == Kind::string; }
    bool is_ident() const { return kind == Kind::ident; }
    bool is_list() const { return kind == Kind::list; }

    /// true/false identifiers double as booleans.
    std::optional<bool> as_bool() const;

    bool structurally_equal(const Value& other) const;
};

struct Entry {
    std::string key;
    Value value;
    SourceSpan span;  // key position
};

struct Block {
    BlockKind kind = BlockKind::capability;
    std::string id;
    std::vector<Entry> entries;  // source order
    SourceSpan span;             // block-kind keyword position

    const Value* find(std::string_view key) const;
    bool structurally_equal(const Block& other) const;
};

struct Document {
    std::vector<Block> blocks;  // source order

    const Block* find(BlockKind kind, std::string_view id) const;
    std::vector<const Block*> of_kind(BlockKind kind) const;
    bool structurally_equal(const Document& other) const;
};

struct ParseError {
    enum class Category { lex, syntax, semantic };

    SourceSpan span;
    std::string message;
    Category category = Category::syntax;
};

std::string_view to_string(ParseError::Category cat);

/// Renders "line:col: category: message" diagnostics.
std::string format_error(const ParseError& err);

}  // namespace caseval::scdl
