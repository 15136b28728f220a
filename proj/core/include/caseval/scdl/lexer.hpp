#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "caseval/scdl/ast.hpp"

namespace caseval::scdl {

struct Token {
    enum class Type {
        ident,
        number,
        string,
        percent,   // '%'
        lbrace,
        rbrace,
        lbracket,
        rbracket,
        colon,
        comma,
        end,
    };

    Type type = Type::end;
    SourceSpan span;
    std::string text;     // ident / string payload
    double number = 0.0;  // number payload
};

std::string_view to_string(Token::Type type);

struct LexResult {
    std::vector<Token> tokens;  // always terminated by an end token
    std::vector<ParseError> errors;
};

/// Tokenizes SCDL source. Never throws; illegal input is reported as lex
/// errors and skipped, so the token stream always terminates.
LexResult lex(std::string_view source);

}  // namespace caseval::scdl
