#pragma once

#include <string>

#include "caseval/scdl/ast.hpp"

namespace caseval::scdl {

/// Shortest decimal representation that round-trips through the lexer.
std::string format_number(double v);

/// Canonical form: two-space indentation, entry keys sorted within each
/// block, numbers in shortest round-trip notation (percent literals appear
/// as their decimal value), one blank line between blocks. Block order is
/// preserved. serialize is idempotent: serialize(parse(serialize(d)))
/// equals serialize(d) byte for byte.
std::string serialize(const Document& doc);

}  // namespace caseval::scdl
