#pragma once

#include <vector>

#include "caseval/control/types.hpp"
#include "caseval/scdl/ast.hpp"

namespace caseval::control {

struct Inputs {
    std::vector<MonitorStage> monitors;  // all monitor blocks
    std::vector<Pipeline> pipelines;     // one per protocol block
    std::vector<AttackPolicy> policies;
};

Inputs load(const scdl::Document& doc);

MonitorStage load_monitor(const scdl::Block& block);
AttackPolicy load_policy(const scdl::Block& block);

}  // namespace caseval::control
