#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "caseval/scdl/ast.hpp"

namespace caseval::scdl {

struct ParseResult {
    std::optional<Document> document;  // set iff errors is empty
    std::vector<ParseError> errors;

    bool ok() const { return errors.empty(); }
};

/// Parses SCDL source. Recovers after syntax errors so that multiple
/// diagnostics are reported per run. Duplicate block identifiers within a
/// kind and duplicate keys within a block are semantic errors.
/// The parser is a pure function of the input and never throws.
ParseResult parse(std::string_view source);

}  // namespace caseval::scdl
