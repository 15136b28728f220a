#pragma once

#include <vector>

#include "caseval/capability/types.hpp"
#include "caseval/scdl/ast.hpp"

namespace caseval::capability {

/// Typed view of the capability, task and scaling_series blocks of a
/// validated document.
struct Inputs {
    std::vector<CapabilityNode> capabilities;
    std::vector<TaskResult> tasks;
    std::vector<std::pair<std::string, ScalingSeries>> scaling_series;
};

Inputs load(const scdl::Document& doc);

}  // namespace caseval::capability
