#pragma once

#include <vector>

#include "caseval/cae/types.hpp"
#include "caseval/scdl/ast.hpp"

namespace caseval::cae {

/// Builds the safety cases of a validated document. Each case block names a
/// root claim; the node table spans all claim/argument/evidence blocks.
std::vector<Case> load(const scdl::Document& doc);

}  // namespace caseval::cae
