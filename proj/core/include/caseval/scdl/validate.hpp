#pragma once

#include <vector>

#include "caseval/scdl/ast.hpp"

namespace caseval::scdl {

/// Semantic validation of a parsed document: per-kind key schemas,
/// probability ranges, cross-references, acyclicity of capability
/// depends_on edges and monitor ensemble inputs, and CAE child-kind rules
/// (claims supported by arguments; arguments by claims or evidence;
/// evidence is a leaf). Returns an empty vector when the document is valid.
std::vector<ParseError> validate(const Document& doc);

}  // namespace caseval::scdl
