#pragma once

#include <vector>

#include "caseval/process/types.hpp"
#include "caseval/scdl/ast.hpp"

namespace caseval::process {

/// Decodes a process_script block. Events are lists headed by an event name:
///   [propose, id, severity, "property", "attack", [[protocol, policy], ...]]
///   [rest]
///   [critique, "text"]
///   [decide, verdict]                      checks default to true
///   [decide, verdict, s, e, f]             explicit judge checks
///   [decide, verdict, "deadline"]          time-boxed verdict
///   [evals, success_rate]
///   [revise, "text"]
///   [deploy]
ProcessScript load_script(const scdl::Block& block);

std::vector<ProcessScript> load(const scdl::Document& doc);

}  // namespace caseval::process
