#include "caseval/scdl/lexer.hpp"

#include <cctype>
#include <charconv>

namespace caseval::scdl {

std::string_view to_string(Token::Type type) {
    switch (type) {
        case Token::Type::ident: return "identifier";
        case Token::Type::number: return "number";
        case Token::Type::string: return "string";
        case Token::Type::percent: return "'%'";
        case Token::Type::lbrace: return "'{'";
        case Token::Type::rbrace: return "'}'";
        case Token::Type::lbracket: return "'['";
        case Token::Type::rbracket: return "']'";
        case Token::Type::colon: return "':'";
        case Token::Type::comma: return "','";
        case Token::Type::end: return "end of input";
    }
    return "?";
}

namespace {

bool is_ident_start(char c) {
    return c == '_' || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_ident_char(char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9');
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Cursor {
public:
    explicit Cursor(std::string_view src) : src_(src) {}

    bool done() const { return pos_ >= src_.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    char advance() {
        const char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    SourceSpan here(int length = 1) const { return {line_, column_, length}; }
    std::size_t pos() const { return pos_; }
    std::string_view slice(std::size_t from) const {
        return src_.substr(from, pos_ - from);
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

}  // namespace

LexResult lex(std::string_view source) {
    LexResult out;
    Cursor cur(source);

    auto push = [&](Token::Type type, SourceSpan span) {
        Token t;
        t.type = type;
        t.span = span;
        out.tokens.push_back(std::move(t));
    };

    while (!cur.done()) {
        const char c = cur.peek();
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            cur.advance();
            continue;
        }
        if (c == '#') {
            while (!cur.done() && cur.peek() != '\n') cur.advance();
            continue;
        }

        const SourceSpan start = cur.here();
        const std::size_t start_pos = cur.pos();

        switch (c) {
            case '{': cur.advance(); push(Token::Type::lbrace, start); continue;
            case '}': cur.advance(); push(Token::Type::rbrace, start); continue;
            case '[': cur.advance(); push(Token::Type::lbracket, start); continue;
            case ']': cur.advance(); push(Token::Type::rbracket, start); continue;
            case ':': cur.advance(); push(Token::Type::colon, start); continue;
            case ',': cur.advance(); push(Token::Type::comma, start); continue;
            case '%': cur.advance(); push(Token::Type::percent, start); continue;
            default: break;
        }

        if (is_ident_start(c)) {
            while (!cur.done() && is_ident_char(cur.peek())) cur.advance();
            Token t;
            t.type = Token::Type::ident;
            t.text = std::string(cur.slice(start_pos));
            t.span = start;
            t.span.length = static_cast<int>(t.text.size());
            out.tokens.push_back(std::move(t));
            continue;
        }

        if (is_digit(c) || (c == '-' && is_digit(cur.peek(1)))) {
            if (c == '-') cur.advance();
            while (!cur.done() && is_digit(cur.peek())) cur.advance();
            if (cur.peek() == '.' && is_digit(cur.peek(1))) {
                cur.advance();
                while (!cur.done() && is_digit(cur.peek())) cur.advance();
            }
            if ((cur.peek() == 'e' || cur.peek() == 'E') &&
                (is_digit(cur.peek(1)) ||
                 ((cur.peek(1) == '+' || cur.peek(1) == '-') && is_digit(cur.peek(2))))) {
                cur.advance();
                if (cur.peek() == '+' || cur.peek() == '-') cur.advance();
                while (!cur.done() && is_digit(cur.peek())) cur.advance();
            }
            const std::string_view lexeme = cur.slice(start_pos);
            double parsed = 0.0;
            const auto rc =
                std::from_chars(lexeme.data(), lexeme.data() + lexeme.size(), parsed);
            SourceSpan span = start;
            span.length = static_cast<int>(lexeme.size());
            if (rc.ec != std::errc{}) {
                out.errors.push_back(
                    {span, "number literal out of range", ParseError::Category::lex});
                continue;
            }
            Token t;
            t.type = Token::Type::number;
            t.number = parsed;
            t.span = span;
            out.tokens.push_back(std::move(t));
            continue;
        }

        if (c == '"') {
            cur.advance();
            std::string payload;
            bool terminated = false;
            while (!cur.done()) {
                const char d = cur.peek();
                if (d == '\n') break;  // strings may not span lines
                cur.advance();
                if (d == '"') {
                    terminated = true;
                    break;
                }
                if (d == '\\') {
                    const char e = cur.peek();
                    if (e == '"' || e == '\\') {
                        payload.push_back(e);
                        cur.advance();
                    } else {
                        SourceSpan span = cur.here();
                        out.errors.push_back({span,
                                              "invalid escape sequence (only \\\" and "
                                              "\\\\ are recognized)",
                                              ParseError::Category::lex});
                        if (!cur.done() && e != '\n') cur.advance();
                    }
                    continue;
                }
                payload.push_back(d);
            }
            if (!terminated) {
                out.errors.push_back(
                    {start, "unterminated string", ParseError::Category::lex});
                continue;
            }
            Token t;
            t.type = Token::Type::string;
            t.text = std::move(payload);
            t.span = start;
            t.span.length = static_cast<int>(cur.pos() - start_pos);
            out.tokens.push_back(std::move(t));
            continue;
        }

        cur.advance();
        out.errors.push_back(
            {start, "illegal character", ParseError::Category::lex});
    }

    Token end;
    end.type = Token::Type::end;
    end.span = cur.here(0);
    out.tokens.push_back(std::move(end));
    return out;
}

}  // namespace caseval::scdl
