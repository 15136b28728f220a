#pragma once

#include <vector>

#include "caseval/probe/types.hpp"
#include "caseval/scdl/ast.hpp"

namespace caseval::probe {

struct ProbeSpec {
    std::string id;
    SyntheticGeneratorSpec generator;
    ThresholdPolicy threshold;
};

ProbeSpec load_spec(const scdl::Block& block);

std::vector<ProbeSpec> load(const scdl::Document& doc);

}  // namespace caseval::probe
