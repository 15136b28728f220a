#include "caseval/scdl/parser.hpp"

#include <map>
#include <set>
#include <utility>

#include "caseval/scdl/lexer.hpp"

namespace caseval::scdl {

namespace {

class Parser {
public:
    Parser(std::vector<Token> tokens, std::vector<ParseError> lex_errors)
        : tokens_(std::move(tokens)), errors_(std::move(lex_errors)) {}

    ParseResult run() {
        Document doc;
        while (!at_end()) {
            if (auto block = parse_block()) {
                note_block_id(*block);
                doc.blocks.push_back(std::move(*block));
            }
        }
        ParseResult out;
        out.errors = std::move(errors_);
        if (out.errors.empty()) out.document = std::move(doc);
        return out;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        const std::size_t i = pos_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }

    const Token& advance() {
        const Token& t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }

    bool at_end() const { return peek().type == Token::Type::end; }

    void error(const Token& at, std::string message,
               ParseError::Category cat = ParseError::Category::syntax) {
        errors_.push_back({at.span, std::move(message), cat});
    }

    // Skips to a plausible top-level block start: an identifier naming a
    // block kind, or end of input. Always consumes at least one token.
    void synchronize_top_level() {
        if (!at_end()) advance();
        while (!at_end()) {
            const Token& t = peek();
            if (t.type == Token::Type::ident && block_kind_from(t.text)) return;
            advance();
        }
    }

    // Within a block body, skips to the next plausible entry (ident ':'),
    // the closing brace, or end of input. Always consumes at least one token.
    void synchronize_entry() {
        if (!at_end() && peek().type != Token::Type::rbrace) advance();
        while (!at_end()) {
            const Token& t = peek();
            if (t.type == Token::Type::rbrace) return;
            if (t.type == Token::Type::ident &&
                peek(1).type == Token::Type::colon) {
                return;
            }
            advance();
        }
    }

    std::optional<Block> parse_block() {
        const Token& kind_tok = peek();
        if (kind_tok.type != Token::Type::ident) {
            error(kind_tok, "expected a block kind, got " +
                                std::string(to_string(kind_tok.type)));
            synchronize_top_level();
            return std::nullopt;
        }
        const auto kind = block_kind_from(kind_tok.text);
        if (!kind) {
            error(kind_tok, "unknown block kind '" + kind_tok.text + "'");
            synchronize_top_level();
            return std::nullopt;
        }
        advance();

        Block block;
        block.kind = *kind;
        block.span = kind_tok.span;

        const Token& id_tok = peek();
        if (id_tok.type != Token::Type::ident) {
            error(id_tok, "expected block identifier, got " +
                              std::string(to_string(id_tok.type)));
            synchronize_top_level();
            return std::nullopt;
        }
        block.id = id_tok.text;
        advance();

        if (peek().type != Token::Type::lbrace) {
            error(peek(), "expected '{' to open block '" + block.id + "'");
            synchronize_top_level();
            return std::nullopt;
        }
        advance();

        std::set<std::string> seen_keys;
        while (true) {
            const Token& t = peek();
            if (t.type == Token::Type::rbrace) {
                advance();
                break;
            }
            if (t.type == Token::Type::end) {
                error(t, "unexpected end of input inside block '" + block.id + "'");
                break;
            }
            if (t.type != Token::Type::ident) {
                error(t, "expected entry key or '}', got " +
                             std::string(to_string(t.type)));
                synchronize_entry();
                continue;
            }
            Entry entry;
            entry.key = t.text;
            entry.span = t.span;
            advance();
            if (peek().type != Token::Type::colon) {
                error(peek(), "expected ':' after key '" + entry.key + "'");
                synchronize_entry();
                continue;
            }
            advance();
            auto value = parse_value();
            if (!value) {
                synchronize_entry();
                continue;
            }
            entry.value = std::move(*value);
            if (!seen_keys.insert(entry.key).second) {
                error(t, "duplicate key '" + entry.key + "' in block '" + block.id + "'",
                      ParseError::Category::semantic);
                continue;
            }
            block.entries.push_back(std::move(entry));
        }
        return block;
    }

    std::optional<Value> parse_value() {
        const Token& t = peek();
        switch (t.type) {
            case Token::Type::number: {
                advance();
                double v = t.number;
                SourceSpan span = t.span;
                if (peek().type == Token::Type::percent) {
                    advance();
                    v /= 100.0;  // percent literal sugar
                }
                return Value::make_number(v, span);
            }
            case Token::Type::string: {
                advance();
                return Value::make_string(t.text, t.span);
            }
            case Token::Type::ident: {
                advance();
                return Value::make_ident(t.text, t.span);
            }
            case Token::Type::lbracket: {
                advance();
                std::vector<Value> items;
                if (peek().type == Token::Type::rbracket) {
                    advance();
                    return Value::make_list(std::move(items), t.span);
                }
                while (true) {
                    auto item = parse_value();
                    if (!item) return std::nullopt;
                    items.push_back(std::move(*item));
                    if (peek().type == Token::Type::comma) {
                        advance();
                        continue;
                    }
                    if (peek().type == Token::Type::rbracket) {
                        advance();
                        return Value::make_list(std::move(items), t.span);
                    }
                    error(peek(), "expected ',' or ']' in list, got " +
                                      std::string(to_string(peek().type)));
                    return std::nullopt;
                }
            }
            default:
                error(t, "expected a value, got " + std::string(to_string(t.type)));
                return std::nullopt;
        }
    }

    void note_block_id(const Block& block) {
        const auto key = std::make_pair(block.kind, block.id);
        if (!block_ids_.insert(key).second) {
            errors_.push_back({block.span,
                               "duplicate " + std::string(to_string(block.kind)) +
                                   " identifier '" + block.id + "'",
                               ParseError::Category::semantic});
        }
    }

    std::vector<Token> tokens_;
    std::vector<ParseError> errors_;
    std::size_t pos_ = 0;
    std::set<std::pair<BlockKind, std::string>> block_ids_;
};

}  // namespace

ParseResult parse(std::string_view source) {
    LexResult lexed = lex(source);
    Parser parser(std::move(lexed.tokens), std::move(lexed.errors));
    return parser.run();
}

}  // namespace caseval::scdl
